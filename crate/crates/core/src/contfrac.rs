//! Continued-fraction eigencondition.
//!
//! The minimal solution of the coefficient recursion satisfies the `ν = 0`
//! relation `L₀c₀ + M₀c₁ = 0` only at the physical energies. With
//! `A_ν = -K_ν/M_ν` and `B_ν = L_ν/M_ν` this reads
//!
//! ```text
//! B₀ + A₁/(B₁ + A₂/(B₂ + …)) = 0
//! ```
//!
//! [`cf_value`] evaluates the same fraction multiplied through by `M₀`,
//! i.e. `L₀ - M₀K₁/(L₁ - M₁K₂/(L₂ - …))`. The two have identical zeros, but
//! the scaled form never divides by an `M_ν`, which vanishes at isolated
//! energies (for example at `ε = 0` on the bare sphere, exactly where the
//! ground state sits).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::PhysicalConfig;
use crate::recursion::Recurrence;

/// Substitute for vanishing Lentz denominators.
pub const TINY: f64 = 1e-300;
/// Default relative stopping tolerance for the Lentz iteration.
pub const DEFAULT_TOL: f64 = 1e-14;
/// Default iteration cap for the Lentz iteration.
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Magnitude above which a value is treated as sitting on a pole.
pub const POLE_THRESHOLD: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CfEvaluation {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub suspected_pole: bool,
}

/// Modified Lentz evaluation of `b₀ + a₁/(b₁ + a₂/(b₂ + …))`.
///
/// `source(ν)` returns `(a_ν, b_ν)`; `a₀` is ignored. Never fails: a
/// fraction that has not settled after `max_iter` terms comes back with
/// `converged = false`.
pub fn lentz_eval<F>(mut source: F, tol: f64, max_iter: usize) -> CfEvaluation
where
    F: FnMut(usize) -> (f64, f64),
{
    match try_lentz_eval(|nu| Ok::<_, std::convert::Infallible>(source(nu)), tol, max_iter) {
        Ok(eval) => eval,
        Err(never) => match never {},
    }
}

/// [`lentz_eval`] over a fallible coefficient source.
pub fn try_lentz_eval<F, E>(mut source: F, tol: f64, max_iter: usize) -> Result<CfEvaluation, E>
where
    F: FnMut(usize) -> Result<(f64, f64), E>,
{
    let (_, b0) = source(0)?;
    let mut f = if b0 == 0.0 { TINY } else { b0 };
    let mut c = f;
    let mut d = 0.0;
    let mut converged = false;
    let mut iterations = 0;

    for j in 1..=max_iter.max(1) {
        iterations = j;
        let (a, b) = source(j)?;
        d = b + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < tol {
            converged = true;
            break;
        }
    }

    Ok(CfEvaluation {
        value: f,
        iterations,
        converged,
        suspected_pole: !(f.abs() <= POLE_THRESHOLD),
    })
}

/// The eigencondition fraction of one configuration at one energy.
#[derive(Debug, Clone, Copy)]
pub struct HeunFraction {
    rec: Recurrence,
}

impl HeunFraction {
    pub fn new(config: &PhysicalConfig, epsilon: f64) -> Self {
        Self {
            rec: Recurrence::new(config, epsilon),
        }
    }

    pub fn recurrence(&self) -> &Recurrence {
        &self.rec
    }

    /// `(A_ν, B_ν) = (-K_ν/M_ν, L_ν/M_ν)`.
    pub fn partial(&self, nu: usize) -> Result<(f64, f64)> {
        let c = self.rec.coeffs(nu)?;
        if c.m == 0.0 {
            return Err(Error::CoefficientError { nu });
        }
        Ok((-c.k / c.m, c.l / c.m))
    }

    /// Division-free partials `(-M_{ν-1}K_ν, L_ν)` of the `M₀`-scaled fraction.
    pub fn scaled_partial(&self, nu: usize) -> Result<(f64, f64)> {
        let c = self.rec.coeffs(nu)?;
        if nu == 0 {
            return Ok((0.0, c.l));
        }
        let prev = self.rec.coeffs(nu - 1)?;
        Ok((-prev.m * c.k, c.l))
    }

    /// Lentz value of the `M₀`-scaled fraction.
    pub fn evaluate(&self, tol: f64, max_iter: usize) -> Result<CfEvaluation> {
        try_lentz_eval(|nu| self.scaled_partial(nu), tol, max_iter)
    }

    /// Truncation depth for [`HeunFraction::characteristic`]: the fraction
    /// settles once `ν` has outgrown `√|αβ|`.
    pub fn default_depth(&self) -> usize {
        64 + 2 * self.rec.alphabeta().abs().sqrt().ceil() as usize
    }

    /// Pole-free form of the eigencondition.
    ///
    /// Runs the tail recursion `z_ν = b_ν z_{ν+1} + a_{ν+1} z_{ν+2}` down from
    /// `z_{N+1} = 1, z_{N+2} = 0`, so the truncated fraction is `z₀/z₁`. `z₀`
    /// is a polynomial in the energy; the result is `z₀/|(z₀, z₁)|`, which
    /// has the zeros of the fraction but none of its poles and stays in
    /// `[-1, 1]`. Only positive rescalings are applied, so the sign is exact.
    pub fn characteristic(&self, depth: usize) -> Result<f64> {
        let (z0, z1) = self.backward_tail(depth)?;
        let norm = z0.hypot(z1);
        if norm == 0.0 || !norm.is_finite() {
            return Ok(0.0);
        }
        Ok(z0 / norm)
    }

    /// `(z₀, z₁)` up to a common positive factor.
    pub(crate) fn backward_tail(&self, depth: usize) -> Result<(f64, f64)> {
        let mut z_next = 0.0; // z_{ν+2}
        let mut z = 1.0; // z_{ν+1}
        let mut a_next = 0.0; // a_{ν+1}
        for nu in (0..=depth).rev() {
            let (a, b) = self.scaled_partial(nu)?;
            let z_new = b * z + a_next * z_next;
            z_next = z;
            z = z_new;
            a_next = a;
            let scale = z.abs().max(z_next.abs());
            if scale > 1e150 || (scale < 1e-150 && scale > 0.0) {
                z /= scale;
                z_next /= scale;
            }
        }
        Ok((z, z_next))
    }
}

/// Value of the eigencondition fraction (scaled by `M₀`, see the module
/// docs) for `config` at `epsilon`.
pub fn cf_value(
    config: &PhysicalConfig,
    epsilon: f64,
    tol: f64,
    max_iter: usize,
) -> Result<CfEvaluation> {
    if !(tol > 0.0) || max_iter == 0 {
        return Err(Error::InvalidArgument(format!(
            "tol must be > 0 and max_iter >= 1 (got {tol}, {max_iter})"
        )));
    }
    HeunFraction::new(config, epsilon).evaluate(tol, max_iter)
}

/// Pole-free eigencondition at the default depth.
pub fn characteristic_value(config: &PhysicalConfig, epsilon: f64) -> Result<f64> {
    let frac = HeunFraction::new(config, epsilon);
    frac.characteristic(frac.default_depth())
}
