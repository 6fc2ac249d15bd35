//! Quantized energies as zeros of the eigencondition.
//!
//! Roots are localized on the pole-free characteristic function
//! ([`HeunFraction::characteristic`]) rather than on the fraction itself: the
//! fraction has a pole next to almost every zero, so its sign flips twice
//! across each level and a coarse scan sees nothing. Each bracket is then
//! tightened until the fraction itself changes sign across it without a pole
//! inside, and refined by bisection.

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::potential_minimum;
use crate::contfrac::{HeunFraction, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::params::PhysicalConfig;

/// Fraction magnitude above which a bracket midpoint is taken to sit on a pole.
pub const BRACKET_POLE_THRESHOLD: f64 = 1e6;
/// Default refinement tolerance in ε.
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

const MAX_HALVINGS: usize = 6;
const MAX_GROWTHS: usize = 40;

/// One quantized level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    /// Ascending index, starting at 1.
    pub n: usize,
    pub m: i64,
    pub epsilon: f64,
    /// `None` when the level sits exactly on the pole of [`h_of_epsilon`].
    pub h_n: Option<f64>,
    /// `|CF(ε)| / max(1, |L₀|)`: the fraction at the root relative to the
    /// size of its leading term.
    pub cf_residual: f64,
}

/// Controls for [`spectrum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    /// Scan step; defaults to `(a+b+1)/10`.
    pub step: Option<f64>,
    /// Scan start; defaults to half a step below the classical minimum.
    pub eps_min: Option<f64>,
    /// Hard upper end of the scan. Without it the window grows until enough
    /// roots are found.
    pub eps_max: Option<f64>,
    /// Refinement tolerance in ε.
    pub tol: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            step: None,
            eps_min: None,
            eps_max: None,
            tol: DEFAULT_ROOT_TOL,
        }
    }
}

/// `h(ε) = 4·coulomb / [4(ε + S²) - (a+b)(a+b+2)]`.
pub fn h_of_epsilon(config: &PhysicalConfig, epsilon: f64) -> Result<f64> {
    let denom = -config.heun_params().alphabeta(epsilon);
    if denom == 0.0 {
        return Err(Error::PoleAtLandauFloor { epsilon });
    }
    Ok(4.0 * config.coulomb() / denom)
}

/// Truncation depth good for every energy in `[lo, hi]`.
///
/// One depth per window: the overall sign of the characteristic function
/// depends on the truncation, so comparing signs across depths is meaningless.
fn window_depth(config: &PhysicalConfig, lo: f64, hi: f64) -> usize {
    let a = HeunFraction::new(config, lo).default_depth();
    let b = HeunFraction::new(config, hi).default_depth();
    a.max(b)
}

fn characteristic(config: &PhysicalConfig, epsilon: f64, depth: usize) -> Result<f64> {
    HeunFraction::new(config, epsilon).characteristic(depth)
}

fn fraction(config: &PhysicalConfig, epsilon: f64) -> Result<crate::contfrac::CfEvaluation> {
    HeunFraction::new(config, epsilon).evaluate(DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// Shrinks a characteristic-function bracket until the fraction itself
/// changes sign across it, with neither end nor the midpoint near a pole.
fn tighten(config: &PhysicalConfig, mut lo: f64, mut hi: f64, depth: usize) -> Result<(f64, f64)> {
    let d_lo = characteristic(config, lo, depth)?;
    for _ in 0..200 {
        let f_lo = fraction(config, lo)?;
        let f_hi = fraction(config, hi)?;
        let f_mid = fraction(config, 0.5 * (lo + hi))?;
        if f_lo.value * f_hi.value < 0.0
            && !f_lo.suspected_pole
            && !f_hi.suspected_pole
            && f_mid.value.abs() < BRACKET_POLE_THRESHOLD
        {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d_mid = characteristic(config, mid, depth)?;
        if d_mid == 0.0 {
            let w = (hi - lo) * 0.25;
            lo = mid - w;
            hi = mid + w;
        } else if (d_mid < 0.0) == (d_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Sign-change brackets of the eigencondition in `[eps_min, eps_max]`,
/// sorted ascending.
pub fn bracket_roots(
    config: &PhysicalConfig,
    eps_min: f64,
    eps_max: f64,
    step: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidArgument(format!("scan step must be > 0, got {step}")));
    }
    if !(eps_max > eps_min) || !eps_min.is_finite() || !eps_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scan window [{eps_min}, {eps_max}] is empty"
        )));
    }
    let depth = window_depth(config, eps_min, eps_max);
    let points = ((eps_max - eps_min) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=points)
        .map(|i| (eps_min + i as f64 * step).min(eps_max))
        .collect();
    let values = grid
        .par_iter()
        .map(|&e| characteristic(config, e, depth))
        .collect::<Result<Vec<_>>>()?;

    let mut raw = Vec::new();
    let mut i = 0;
    while i + 1 < grid.len() {
        let (d0, d1) = (values[i], values[i + 1]);
        if d0 == 0.0 {
            // Root on a grid point: bracket it symmetrically.
            let w = 0.25 * step;
            raw.push((grid[i] - w, grid[i] + w));
        } else if d1 != 0.0 && (d0 < 0.0) != (d1 < 0.0) {
            raw.push((grid[i], grid[i + 1]));
        }
        i += 1;
    }
    if values[grid.len() - 1] == 0.0 {
        let w = 0.25 * step;
        raw.push((eps_max - w, eps_max + w));
    }

    raw.par_iter()
        .map(|&(lo, hi)| tighten(config, lo, hi, window_depth(config, lo, hi).max(depth)))
        .collect()
}

/// Refines a bracket to a level. `n` is left at 0 for the caller to fill in.
pub fn refine_root(config: &PhysicalConfig, bracket: (f64, f64), tol: f64) -> Result<EnergyLevel> {
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be > 0, got {tol}")));
    }
    let depth = window_depth(config, lo, hi);
    let mut d_lo = characteristic(config, lo, depth)?;
    let d_hi = characteristic(config, hi, depth)?;
    if d_lo == 0.0 {
        hi = lo;
    } else if d_hi == 0.0 {
        lo = hi;
    } else if (d_lo < 0.0) == (d_hi < 0.0) {
        return Err(Error::BracketInvalid { lo, hi });
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d_mid = characteristic(config, mid, depth)?;
        if d_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (d_mid < 0.0) == (d_lo < 0.0) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    let epsilon = 0.5 * (lo + hi);

    let eval = fraction(config, epsilon)?;
    if eval.suspected_pole {
        return Err(Error::PoleDetected { epsilon });
    }
    let l0 = HeunFraction::new(config, epsilon).recurrence().coeffs(0)?.l;
    Ok(EnergyLevel {
        n: 0,
        m: config.m(),
        epsilon,
        h_n: h_of_epsilon(config, epsilon).ok(),
        cf_residual: eval.value.abs() / l0.abs().max(1.0),
    })
}

/// Default scan step `(a+b+1)/10`.
pub fn default_step(config: &PhysicalConfig) -> f64 {
    let e = config.exponents();
    (e.a + e.b + 1.0) / 10.0
}

/// Brackets in a window, halving the step until the count stops changing.
fn stable_brackets(
    config: &PhysicalConfig,
    lo: f64,
    hi: f64,
    step: f64,
) -> Result<Vec<(f64, f64)>> {
    let mut step = step;
    let mut current = bracket_roots(config, lo, hi, step)?;
    for _ in 0..MAX_HALVINGS {
        step *= 0.5;
        let finer = bracket_roots(config, lo, hi, step)?;
        if finer.len() == current.len() {
            return Ok(current);
        }
        current = finer;
    }
    Ok(current)
}

/// The `n_levels` lowest levels, indexed `1, 2, …` in ascending energy.
pub fn spectrum(
    config: &PhysicalConfig,
    n_levels: usize,
    scan: &ScanSettings,
) -> Result<Vec<EnergyLevel>> {
    if n_levels == 0 {
        return Err(Error::InvalidArgument("n_levels must be >= 1".into()));
    }
    let step = scan.step.unwrap_or_else(|| default_step(config));
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidArgument(format!("scan step must be > 0, got {step}")));
    }
    let eps0 = potential_minimum(config).eps0;
    let start = scan.eps_min.unwrap_or(eps0 - 0.5 * step);

    let mut brackets = Vec::new();
    let mut lo = start;
    let mut width = (n_levels as f64 + 1.0) * (2.0 * step * 10.0 + 4.0);
    let mut end;
    let mut growths = 0;
    loop {
        end = match scan.eps_max {
            Some(cap) => cap.min(lo + width).max(lo + step),
            None => lo + width,
        };
        if let Some(cap) = scan.eps_max {
            if lo >= cap {
                end = lo;
                break;
            }
        }
        brackets.extend(stable_brackets(config, lo, end, step)?);
        if brackets.len() >= n_levels {
            break;
        }
        growths += 1;
        let capped = scan.eps_max.is_some_and(|cap| end >= cap);
        if capped || growths >= MAX_GROWTHS {
            break;
        }
        lo = end;
        width *= 2.0;
    }
    // A root sitting on a chunk boundary can be bracketed from both sides.
    brackets.sort_by(|x, y| x.0.total_cmp(&y.0));
    brackets.dedup_by(|b, a| b.0 <= a.1);

    if brackets.len() < n_levels {
        return Err(Error::InsufficientRoots {
            found: brackets.len(),
            requested: n_levels,
            eps_min: start,
            eps_max: end,
        });
    }

    let mut levels = brackets[..n_levels]
        .par_iter()
        .map(|&b| refine_root(config, b, scan.tol))
        .collect::<Result<Vec<_>>>()?;
    levels.sort_by(|x, y| x.epsilon.total_cmp(&y.epsilon));
    for (i, level) in levels.iter_mut().enumerate() {
        level.n = i + 1;
    }
    Ok(levels)
}
