//! Problem definition and the algebraic map onto Heun-equation parameters.
//!
//! A problem instance is fixed by three numbers: the half-flux `S = R²/l_B²`,
//! the azimuthal quantum number `m`, and the Coulomb ratio `R/l₀`. Energies
//! everywhere in the crate are measured in units of `ħ²/(2MR²)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Dimensionless problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConfig {
    s: f64,
    m: i64,
    coulomb: f64,
}

impl PhysicalConfig {
    /// Validates and builds a configuration.
    ///
    /// `s` and `coulomb` must be finite and non-negative; any integer `m` is
    /// accepted. `s` is not restricted to half-integers.
    pub fn new(s: f64, m: i64, coulomb: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "half-flux S must be finite and >= 0, got {s}"
            )));
        }
        if !coulomb.is_finite() || coulomb < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "Coulomb ratio must be finite and >= 0, got {coulomb}"
            )));
        }
        Ok(Self { s, m, coulomb })
    }

    /// Half-flux `S`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Azimuthal quantum number.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// Coulomb ratio `R/l₀`.
    pub fn coulomb(&self) -> f64 {
        self.coulomb
    }

    /// Same instance with a different Coulomb ratio.
    pub fn with_coulomb(&self, coulomb: f64) -> Result<Self> {
        Self::new(self.s, self.m, coulomb)
    }

    pub fn exponents(&self) -> Exponents {
        let m = self.m as f64;
        Exponents {
            a: (self.s - m).abs(),
            b: (self.s + m).abs(),
        }
    }

    pub fn heun_params(&self) -> HeunParams {
        HeunParams::from_config(self)
    }
}

/// Characteristic exponents of the wavefunction at the two poles:
/// `F ~ θ^a` near the north pole and `F ~ (π-θ)^b` near the south pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponents {
    pub a: f64,
    pub b: f64,
}

/// Canonical Heun parameters for this problem family (`a' = -1`, `δ = ε'`).
///
/// The individual `α` and `β` are never formed; the recursion only needs
/// `α+β` (fixed) and `αβ` (linear in the energy), see [`HeunParams::alphabeta`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeunParams {
    pub aprime: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsprime: f64,
    pub w: f64,
    pub alpha_plus_beta: f64,
    /// The accessory combination `αβh`, equal to `-4·coulomb` for every energy.
    pub alphabeta_h: f64,
    pub exponents: Exponents,
    s: f64,
}

impl HeunParams {
    fn from_config(config: &PhysicalConfig) -> Self {
        let exponents = config.exponents();
        let gamma = 2.0 * exponents.a + 1.0;
        let delta = exponents.b + 1.0;
        let epsprime = delta;
        let w = gamma + delta - 1.0;
        Self {
            aprime: -1.0,
            gamma,
            delta,
            epsprime,
            w,
            // Fuchs relation α + β + 1 = γ + δ + ε'.
            alpha_plus_beta: gamma + delta + epsprime - 1.0,
            alphabeta_h: -4.0 * config.coulomb(),
            exponents,
            s: config.s(),
        }
    }

    /// `αβ = (a+b)(a+b+2) - 4(ε + S²)`.
    pub fn alphabeta(&self, epsilon: f64) -> f64 {
        let sum = self.exponents.a + self.exponents.b;
        sum * (sum + 2.0) - 4.0 * (epsilon + self.s * self.s)
    }

    /// Half-flux the parameters were built from.
    pub fn s(&self) -> f64 {
        self.s
    }
}

/// Free-function form of [`HeunParams::alphabeta`].
pub fn alphabeta(params: &HeunParams, epsilon: f64) -> f64 {
    params.alphabeta(epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_inputs() {
        assert!(PhysicalConfig::new(-1.0, 0, 0.0).is_err());
        assert!(PhysicalConfig::new(1.0, 0, -0.5).is_err());
        assert!(PhysicalConfig::new(f64::NAN, 0, 0.0).is_err());
        assert!(PhysicalConfig::new(1.0, 0, f64::INFINITY).is_err());
    }

    #[test]
    fn accepts_examples() {
        let c = PhysicalConfig::new(5.0, 2, 100.0).unwrap();
        assert_eq!((c.s(), c.m(), c.coulomb()), (5.0, 2, 100.0));
        PhysicalConfig::new(0.0, 0, 0.0).unwrap();
        PhysicalConfig::new(2.0, -3, 10.0).unwrap();
    }

    #[test]
    fn exponent_examples() {
        let e = |s, m| PhysicalConfig::new(s, m, 0.0).unwrap().exponents();
        assert_eq!(e(2.0, 1), Exponents { a: 1.0, b: 3.0 });
        assert_eq!(e(2.0, -3), Exponents { a: 5.0, b: 1.0 });
        assert_eq!(e(5.0, 0), Exponents { a: 5.0, b: 5.0 });
    }

    #[test]
    fn heun_param_examples() {
        let p = PhysicalConfig::new(2.0, 1, 10.0).unwrap().heun_params();
        assert_eq!(p.aprime, -1.0);
        assert_eq!((p.gamma, p.delta, p.epsprime, p.w), (3.0, 4.0, 4.0, 6.0));
        assert_eq!(p.alpha_plus_beta, 10.0);
        assert_eq!(p.alphabeta_h, -40.0);

        let p = PhysicalConfig::new(0.0, 0, 0.0).unwrap().heun_params();
        assert_eq!((p.gamma, p.delta, p.epsprime, p.w), (1.0, 1.0, 1.0, 1.0));
        assert_eq!(p.alphabeta_h, 0.0);

        let p = PhysicalConfig::new(5.0, 2, 100.0).unwrap().heun_params();
        assert_eq!((p.gamma, p.delta, p.epsprime, p.w), (7.0, 8.0, 8.0, 14.0));
        assert_eq!(p.alphabeta_h, -400.0);
    }

    #[test]
    fn alphabeta_examples() {
        let p = PhysicalConfig::new(2.0, 1, 10.0).unwrap().heun_params();
        assert_eq!(alphabeta(&p, 2.0), 0.0);
        assert_eq!(alphabeta(&p, 3.0), -4.0);
        let p = PhysicalConfig::new(0.0, 0, 0.0).unwrap().heun_params();
        assert_eq!(alphabeta(&p, 0.0), 0.0);
    }

    proptest! {
        #[test]
        fn exponent_identities(s in 0.0f64..200.0, m in -300i64..300) {
            let c = PhysicalConfig::new(s, m, 1.0).unwrap();
            let Exponents { a, b } = c.exponents();
            let mf = m as f64;
            let scale = (s * s + mf * mf).max(1.0);
            prop_assert!((a * a - b * b + 4.0 * s * mf).abs() <= 1e-12 * scale);
            prop_assert!((a * a + b * b - 2.0 * (s * s + mf * mf)).abs() <= 1e-12 * scale);
            prop_assert!(a >= 0.0 && b >= 0.0);
        }

        #[test]
        fn fuchs_relation_and_constant_accessory(
            s in 0.0f64..100.0, m in -100i64..100, q in 0.0f64..500.0,
            e1 in -100.0f64..1000.0, e2 in -100.0f64..1000.0,
        ) {
            let c = PhysicalConfig::new(s, m, q).unwrap();
            let p = c.heun_params();
            prop_assert_eq!(p.alpha_plus_beta + 1.0, p.gamma + p.delta + p.epsprime);
            prop_assert_eq!(p.alphabeta_h, -4.0 * q);
            // αβh does not follow αβ as the energy moves.
            prop_assert_eq!(c.heun_params().alphabeta_h, p.alphabeta_h);
            let sum = p.exponents.a + p.exponents.b;
            let slope = (p.alphabeta(e1) - p.alphabeta(e2)) / (e1 - e2);
            if (e1 - e2).abs() > 1e-3 {
                prop_assert!((slope + 4.0).abs() < 1e-6 * (1.0 + sum * sum + s * s));
            }
        }

        #[test]
        fn m_reflection_swaps_exponents(s in 0.0f64..100.0, m in -100i64..100) {
            let plus = PhysicalConfig::new(s, m, 0.0).unwrap().exponents();
            let minus = PhysicalConfig::new(s, -m, 0.0).unwrap().exponents();
            prop_assert_eq!(plus.a, minus.b);
            prop_assert_eq!(plus.b, minus.a);
        }
    }
}
