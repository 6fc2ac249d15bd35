//! Three-term recursion `K_ν c_{ν-1} + L_ν c_ν + M_ν c_{ν+1} = 0` for the
//! coefficients of the hypergeometric expansion of the local Heun function,
//! its large-ν asymptotics and the augmented-convergence test.
//!
//! The products `(ν+α-1)(ν+β-1)` and `(ν+w-α+1)(ν+w-β+1)` are expanded in the
//! symmetric functions `α+β` and `αβ`, so every coefficient stays real even
//! when `α` and `β` form a complex-conjugate pair.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{HeunParams, PhysicalConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecursionCoeffs {
    pub nu: usize,
    /// Multiplies `c_{ν-1}`; zero (absent) at `ν = 0`.
    pub k: f64,
    pub l: f64,
    pub m: f64,
}

/// Recursion coefficients at a fixed energy.
#[derive(Debug, Clone, Copy)]
pub struct Recurrence {
    params: HeunParams,
    alphabeta: f64,
}

impl Recurrence {
    pub fn new(config: &PhysicalConfig, epsilon: f64) -> Self {
        let params = config.heun_params();
        let alphabeta = params.alphabeta(epsilon);
        Self { params, alphabeta }
    }

    /// Builds a recurrence from explicit parameters and `αβ`.
    pub fn from_params(params: HeunParams, alphabeta: f64) -> Self {
        Self { params, alphabeta }
    }

    pub fn params(&self) -> &HeunParams {
        &self.params
    }

    pub fn alphabeta(&self) -> f64 {
        self.alphabeta
    }

    /// `K_ν`, `L_ν`, `M_ν`.
    pub fn coeffs(&self, nu: usize) -> Result<RecursionCoeffs> {
        let p = &self.params;
        let w = p.w;
        let ab = self.alphabeta;
        let apb = p.alpha_plus_beta;
        let n = nu as f64;
        let n_nw = n * (n + w);

        let degenerate = |d: f64| -> Result<f64> {
            if d == 0.0 || !d.is_finite() {
                Err(Error::DegenerateDenominator { nu, w })
            } else {
                Ok(d)
            }
        };

        let k = if nu == 0 {
            0.0
        } else {
            let den = degenerate((2.0 * n + w - 1.0) * (2.0 * n + w - 2.0))?;
            let p1 = (n - 1.0) * (n - 1.0) + (n - 1.0) * apb + ab;
            p1 * (n + p.gamma - 1.0) * (n + w - 1.0) / den
        };

        let l = if nu == 0 {
            // The fraction reduces to αβγ(w-1)/((w-1)(w+1)); cancel (w-1) so
            // that w = 1 (a = b = 0) stays finite.
            let den = degenerate(w + 1.0)?;
            p.alphabeta_h - ab * p.gamma / den
        } else {
            let den = degenerate((2.0 * n + w - 1.0) * (2.0 * n + w + 1.0))?;
            let num = p.epsprime * n_nw * (p.gamma - p.delta)
                + (n_nw + ab) * (2.0 * n_nw + p.gamma * (w - 1.0));
            p.alphabeta_h + p.aprime * n_nw - num / den
        };

        let m = {
            let den = degenerate((2.0 * n + w + 1.0) * (2.0 * n + w + 2.0))?;
            let t = n + w + 1.0;
            let p2 = t * t - t * apb + ab;
            (n + 1.0) * p2 * (n + p.delta) / den
        };

        Ok(RecursionCoeffs { nu, k, l, m })
    }
}

/// `K_ν`, `L_ν`, `M_ν` for a configuration at energy `epsilon`.
pub fn recursion_coeffs(
    config: &PhysicalConfig,
    epsilon: f64,
    nu: usize,
) -> Result<RecursionCoeffs> {
    Recurrence::new(config, epsilon).coeffs(nu)
}

/// Moduli of the roots of the limiting characteristic equation
/// `ρ² + 2(2a'-1)ρ + 1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticRoots {
    pub rho1_abs: f64,
    pub rho2_abs: f64,
    /// `|A|` with `A = √(1 - 1/a')`.
    pub a: f64,
}

pub fn asymptotic_roots(aprime: f64) -> Result<AsymptoticRoots> {
    if aprime == 0.0 || !aprime.is_finite() {
        return Err(Error::InvalidAPrime);
    }
    let big_a = Complex64::new(1.0 - 1.0 / aprime, 0.0).sqrt();
    let rho1_abs = ((1.0 - big_a) / (1.0 + big_a)).norm();
    Ok(AsymptoticRoots {
        rho1_abs,
        rho2_abs: 1.0 / rho1_abs,
        a: big_a.norm(),
    })
}

/// Roots for the problem's own singularity `a' = -1`: `3 ∓ 2√2`.
pub fn problem_roots() -> AsymptoticRoots {
    asymptotic_roots(-1.0).expect("a' = -1 is valid")
}

/// Whether the hypergeometric expansion converges at `x`, i.e.
/// `|(1+X)/(1-X)| < |ρ₂|` with `X = √(1 - 1/x)` taken as a complex root.
///
/// `x = 0` and `x = 1` are the foci of the convergence ellipse and count as
/// inside.
pub fn in_convergence_region(x: f64, roots: &AsymptoticRoots) -> bool {
    if x == 0.0 {
        return true;
    }
    let big_x = Complex64::new(1.0 - 1.0 / x, 0.0).sqrt();
    let denom = (1.0 - big_x).norm();
    if denom == 0.0 {
        return false;
    }
    (1.0 + big_x).norm() / denom < roots.rho2_abs
}
