//! Analytic limits: Landau levels on the sphere and the planar limit.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::PhysicalConfig;
use crate::spectrum::{spectrum, ScanSettings};

fn half_sum(s: f64, m: i64) -> f64 {
    let m = m as f64;
    0.5 * ((s - m).abs() + (s + m).abs())
}

/// `(n + L)(n + L + 1) - S²` with `L = (a+b)/2`: the exact levels without
/// Coulomb repulsion. `L = max(S, |m|)`.
pub fn landau_level(s: f64, m: i64, n: u32) -> f64 {
    let l = half_sum(s, m);
    let n = n as f64;
    (n + l) * (n + l + 1.0) - s * s
}

/// Lowest Coulomb-free level `L(L+1) - S²`.
///
/// Written out on its own, but evaluates bit-for-bit like
/// `landau_level(s, m, 0)`.
pub fn vanishing_coulomb_level(s: f64, m: i64) -> f64 {
    let l = half_sum(s, m);
    l * (l + 1.0) - s * s
}

/// Ground-level behaviour along a sequence of growing spheres.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub s_sequence: Vec<f64>,
    pub coulomb: Vec<f64>,
    /// `ε_ground - vanishing_coulomb_level(S, m)`.
    pub shifts: Vec<f64>,
    /// `shift / 4S`, the eigenvalue parameter of the large-`S` equation in
    /// `χ = 2S(1 - cos θ)`. Diagnostic only.
    pub scaled_levels: Vec<f64>,
    /// Successive differences of `shifts` shrink strictly in magnitude (or
    /// all vanish).
    pub converged: bool,
}

/// Differences below this count as zero in the convergence test.
const FLAT: f64 = 1e-9;

/// Whether successive differences of `seq` shrink strictly in magnitude.
pub fn differences_shrink(seq: &[f64]) -> bool {
    let diffs: Vec<f64> = seq.windows(2).map(|p| (p[1] - p[0]).abs()).collect();
    if diffs.iter().all(|d| *d < FLAT) {
        return true;
    }
    diffs.windows(2).all(|p| p[1] < p[0])
}

/// Solves the ground level for each `S` (in parallel) with
/// `coulomb = coulomb_of_s(S)` and reports the Coulomb shifts.
pub fn planar_limit_check<F>(m: i64, coulomb_of_s: F, s_sequence: &[f64]) -> Result<LimitReport>
where
    F: Fn(f64) -> f64 + Sync,
{
    if s_sequence.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 values of S, got {}",
            s_sequence.len()
        )));
    }
    if s_sequence[0] <= 0.0 || s_sequence.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidArgument(
            "S sequence must be positive and strictly increasing".into(),
        ));
    }
    let points = s_sequence
        .par_iter()
        .map(|&s| {
            let coulomb = coulomb_of_s(s);
            let config = PhysicalConfig::new(s, m, coulomb)?;
            let ground = spectrum(&config, 1, &ScanSettings::default())?[0].epsilon;
            Ok((coulomb, ground - vanishing_coulomb_level(s, m)))
        })
        .collect::<Result<Vec<_>>>()?;

    let coulomb = points.iter().map(|p| p.0).collect();
    let shifts: Vec<f64> = points.iter().map(|p| p.1).collect();
    let scaled_levels: Vec<f64> = shifts.iter().zip(s_sequence).map(|(d, s)| d / (4.0 * s)).collect();
    Ok(LimitReport {
        s_sequence: s_sequence.to_vec(),
        coulomb,
        converged: differences_shrink(&shifts),
        shifts,
        scaled_levels,
    })
}
