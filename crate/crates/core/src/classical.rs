//! Classical θ-motion: effective potential, turning points, action and
//! Bohr–Sommerfeld levels.
//!
//! The potential is `V(θ) = (m - S cos θ)²/sin²θ + coulomb/sin(θ/2)`, the
//! sign convention under which the Schrödinger equation for `F(θ)` reads
//! `-(F'' + cot θ F') + V F = ε F`. Motion is confined to the classically
//! allowed interval `[θ₁, θ₂] ⊂ (0, π)` where `ε ≥ V`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::PhysicalConfig;
use crate::quadrature::CompositeRule;

const SCAN_POINTS: usize = 2048;
const THETA_TOL: f64 = 1e-12;

pub fn effective_potential(config: &PhysicalConfig, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::OutOfDomain(theta));
    }
    Ok(potential(config, theta))
}

fn potential(config: &PhysicalConfig, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let lever = config.m() as f64 - config.s() * c;
    lever * lever / (s * s) + config.coulomb() / (0.5 * theta).sin()
}

/// Limits of `V` at `θ → 0⁺` and `θ → π⁻` (`+∞` unless the centrifugal
/// term cancels there).
fn boundary_limits(config: &PhysicalConfig) -> (f64, f64) {
    let m = config.m() as f64;
    let s = config.s();
    let north = if config.coulomb() == 0.0 && m == s {
        0.0
    } else {
        f64::INFINITY
    };
    let south = if m == -s { config.coulomb() } else { f64::INFINITY };
    (north, south)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialMinimum {
    pub theta_star: f64,
    pub eps0: f64,
    /// The infimum is approached at a pole rather than attained inside.
    pub boundary_infimum: bool,
}

/// Global minimum of the effective potential: dense scan, then golden-section
/// refinement around the best grid point.
pub fn potential_minimum(config: &PhysicalConfig) -> PotentialMinimum {
    let h = PI / SCAN_POINTS as f64;
    let grid = |i: usize| (i as f64 + 0.5) * h;
    let (best, _) = (0..SCAN_POINTS)
        .map(|i| (i, potential(config, grid(i))))
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });

    let lo = if best == 0 { 1e-3 * h } else { grid(best - 1) };
    let hi = if best + 1 == SCAN_POINTS {
        PI - 1e-3 * h
    } else {
        grid(best + 1)
    };
    let theta_star = golden_section(|t| potential(config, t), lo, hi);
    let interior = potential(config, theta_star);

    let (north, south) = boundary_limits(config);
    if north <= interior && north <= south {
        PotentialMinimum { theta_star: 0.0, eps0: north, boundary_infimum: true }
    } else if south <= interior {
        PotentialMinimum { theta_star: PI, eps0: south, boundary_infimum: true }
    } else {
        PotentialMinimum { theta_star, eps0: interior, boundary_infimum: false }
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > 1e-13 * (1.0 + a.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Classical turning points `θ₁ < θ₂` with `V(θ₁) = V(θ₂) = ε`.
///
/// When the potential minimum is a boundary infimum the corresponding
/// turning point is the pole itself (`0` or `π`).
pub fn turning_points(config: &PhysicalConfig, epsilon: f64) -> Result<(f64, f64)> {
    let min = potential_minimum(config);
    if !(epsilon > min.eps0) {
        return Err(Error::BelowMinimum { epsilon, eps0: min.eps0 });
    }
    let g = |t: f64| epsilon - potential(config, t);

    let h = PI / SCAN_POINTS as f64;
    let mut changes = 0;
    let mut prev = g(0.5 * h) >= 0.0;
    for i in 1..SCAN_POINTS {
        let cur = g((i as f64 + 0.5) * h) >= 0.0;
        if cur != prev {
            changes += 1;
        }
        prev = cur;
    }
    if changes > 2 {
        return Err(Error::MultipleWells { epsilon, sign_changes: changes });
    }

    let star = min.theta_star;
    let theta1 = if min.boundary_infimum && star == 0.0 {
        0.0
    } else {
        let mut lo = star;
        while lo > 0.0 && g(lo) > 0.0 {
            lo = (lo - h).max(0.0);
            if lo == 0.0 {
                break;
            }
        }
        if lo == 0.0 && g(f64::MIN_POSITIVE.max(1e-300)) > 0.0 {
            0.0
        } else {
            bisect(g, lo.max(1e-300), star.max(lo + 1e-300), THETA_TOL)
        }
    };
    let theta2 = if min.boundary_infimum && star == PI {
        PI
    } else {
        let start = if star == 0.0 { 0.5 * h } else { star };
        let mut hi = start;
        while hi < PI && g(hi) > 0.0 {
            hi = (hi + h).min(PI);
        }
        if hi >= PI {
            PI
        } else {
            bisect(|t| -g(t), start, hi, THETA_TOL)
        }
    };
    Ok((theta1, theta2))
}

/// One orbit of the θ-motion at fixed energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalOrbit {
    pub epsilon: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// Complete-cycle action `2∫√(ε - V) dθ`, in units of `ħ`.
    pub action: f64,
}

pub fn orbit(config: &PhysicalConfig, epsilon: f64) -> Result<ClassicalOrbit> {
    let (theta1, theta2) = turning_points(config, epsilon)?;
    let action = 2.0 * half_action(config, epsilon, theta1, theta2);
    Ok(ClassicalOrbit { epsilon, theta1, theta2, action })
}

/// `∫_{θ₁}^{θ₂} √(ε - V) dθ` with `θ = mid + half·sin u`, which turns the
/// square-root endpoints into smooth zeros of the integrand.
fn half_action(config: &PhysicalConfig, epsilon: f64, theta1: f64, theta2: f64) -> f64 {
    let mid = 0.5 * (theta1 + theta2);
    let half = 0.5 * (theta2 - theta1);
    let rule = CompositeRule::new(-0.5 * PI, 0.5 * PI, 8, 24);
    rule.integrate(|u| {
        let (su, cu) = u.sin_cos();
        let t = (mid + half * su).clamp(f64::MIN_POSITIVE, PI - 1e-16);
        let radicand = epsilon - potential(config, t);
        radicand.max(0.0).sqrt() * half * cu
    })
}

/// Complete-cycle action `J_θ/ħ` at energy `epsilon`.
pub fn action(config: &PhysicalConfig, epsilon: f64) -> Result<f64> {
    orbit(config, epsilon).map(|o| o.action)
}

/// Bohr–Sommerfeld energy: the `ε` with `∫_{θ₁}^{θ₂} √(ε - V) dθ = π(n + ½)`,
/// equivalently a complete-cycle action of `2π(n + ½)`.
pub fn bohr_sommerfeld_level(config: &PhysicalConfig, n: u32) -> Result<f64> {
    let eps0 = potential_minimum(config).eps0;
    let target = PI * (n as f64 + 0.5);
    let one_way = |eps: f64| -> Result<f64> {
        let (t1, t2) = turning_points(config, eps)?;
        Ok(half_action(config, eps, t1, t2))
    };

    let mut lo = eps0;
    let mut width = 1.0 + 0.1 * eps0.abs();
    let limit = eps0 + 1e9;
    let mut hi = eps0 + width;
    while one_way(hi)? < target {
        lo = hi;
        width *= 2.0;
        hi = eps0 + width;
        if hi > limit {
            return Err(Error::NotBracketed { limit });
        }
    }
    while hi - lo > 1e-12 * (1.0 + hi.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid <= eps0 || one_way(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
