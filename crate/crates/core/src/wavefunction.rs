//! Eigenfunctions rebuilt from the hypergeometric expansion.
//!
//! `F(θ) = (1 - cos θ)^{a/2} (1 + cos θ)^{b/2} Σ_ν c_ν y_ν(x)` with
//! `x = sin(θ/2)` and `y_ν(x) = F(-ν, ν + w; γ; x)`, and `Ψ = e^{imφ} F`.
//! The `c_ν` are the minimal solution of the coefficient recursion, obtained
//! by backward recurrence (forward recursion runs onto the dominant solution).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::contfrac::TINY;
use crate::error::{Error, Result};
use crate::params::PhysicalConfig;
use crate::quadrature::CompositeRule;
use crate::recursion::{in_convergence_region, problem_roots, Recurrence};
use crate::spectrum::EnergyLevel;

/// Initial truncation of the coefficient sequence.
pub const DEFAULT_TRUNCATION: usize = 400;
const MAX_TRUNCATION: usize = 400 << 6;
/// Tail decay required at the truncation point.
pub const TAIL_TOL: f64 = 1e-12;
/// Default number of quadrature nodes for normalization.
pub const DEFAULT_QUADRATURE_POINTS: usize = 1024;
const ORDER: usize = 16;
const FD_STEP: f64 = 1e-4;

/// Terminating series `F(-ν, ν+δ+γ-1; γ; x)`, summed term by term.
pub fn hyp_poly(nu: usize, gamma: f64, delta: f64, x: f64) -> Result<f64> {
    let nf = nu as f64;
    let b = nf + delta + gamma - 1.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..nu {
        let kf = k as f64;
        let denom = (kf + gamma) * (kf + 1.0);
        if denom == 0.0 {
            return Err(Error::GammaPole { k, gamma });
        }
        term *= (kf - nf) * (kf + b) / denom * x;
        sum += term;
    }
    Ok(sum)
}

/// `y_0(x), …, y_n(x)` for `y_ν = F(-ν, ν+w; γ; x)`, via the three-term
/// recurrence of Jacobi polynomials normalized to 1 at `x = 0`. Unlike the
/// power series this stays accurate for large `ν`.
fn hyp_sequence(n: usize, gamma: f64, w: f64, x: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    if n == 0 {
        return;
    }
    out.push(1.0 - (w + 1.0) * x / gamma);
    let (al, be) = (gamma - 1.0, w - gamma);
    let t = 1.0 - 2.0 * x;
    let (ab, a2b2) = (al + be, al * al - be * be);
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let num = (s - 1.0) * (s * (s - 2.0) * t + a2b2) * out[k - 1]
            - 2.0 * (kf - 1.0) * (kf + be - 1.0) * s * out[k - 2];
        out.push(num / (2.0 * (kf + al) * (kf + ab) * (s - 2.0)));
    }
}

/// Minimal solution `c_0 = 1, c_1, …, c_n` of the recursion at `epsilon`,
/// by backward ratio recurrence from `c_{n+1} = 0`.
pub fn coefficients(config: &PhysicalConfig, epsilon: f64, n: usize) -> Result<Vec<f64>> {
    let rec = Recurrence::new(config, epsilon);
    // ratios[ν] = c_ν / c_{ν-1}
    let mut ratios = vec![0.0; n + 2];
    for nu in (1..=n).rev() {
        let c = rec.coeffs(nu)?;
        let mut denom = c.l + c.m * ratios[nu + 1];
        if denom == 0.0 {
            denom = TINY;
        }
        ratios[nu] = -c.k / denom;
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    for nu in 1..=n {
        let next = out[nu - 1] * ratios[nu];
        out.push(next);
    }
    let peak = out.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let ratio = out[n].abs() / peak;
    if !(ratio < TAIL_TOL) {
        return Err(Error::NotMinimal { truncation: n, ratio });
    }
    Ok(out)
}

/// A normalized eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    pub config: PhysicalConfig,
    pub level: EnergyLevel,
    pub coeffs: Vec<f64>,
    pub truncation: usize,
    pub norm_constant: f64,
}

impl WaveFunction {
    /// Coefficients with adaptive truncation (doubling from
    /// [`DEFAULT_TRUNCATION`]), normalized on the sphere.
    pub fn new(config: &PhysicalConfig, level: EnergyLevel) -> Result<Self> {
        let mut n = DEFAULT_TRUNCATION;
        let coeffs = loop {
            match coefficients(config, level.epsilon, n) {
                Ok(c) => break c,
                Err(Error::NotMinimal { .. }) if n < MAX_TRUNCATION => n *= 2,
                Err(e) => return Err(e),
            }
        };
        Self::unnormalized(config, level, coeffs).normalize(DEFAULT_QUADRATURE_POINTS)
    }

    /// Wraps precomputed coefficients with `norm_constant = 1`.
    pub fn unnormalized(config: &PhysicalConfig, level: EnergyLevel, coeffs: Vec<f64>) -> Self {
        Self {
            config: *config,
            level,
            truncation: coeffs.len().saturating_sub(1),
            coeffs,
            norm_constant: 1.0,
        }
    }

    fn raw_f(&self, theta: f64, scratch: &mut Vec<f64>) -> f64 {
        let p = self.config.heun_params();
        let x = (0.5 * theta).sin();
        debug_assert!(in_convergence_region(x, &problem_roots()));
        hyp_sequence(self.truncation, p.gamma, p.w, x, scratch);
        let series: f64 = self.coeffs.iter().zip(scratch.iter()).map(|(c, y)| c * y).sum();
        let cos = theta.cos();
        let e = p.exponents;
        (1.0 - cos).powf(0.5 * e.a) * (1.0 + cos).powf(0.5 * e.b) * series
    }

    /// `F(θ)` including the normalization constant.
    pub fn eval_f(&self, theta: f64) -> Result<f64> {
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::OutOfDomain(theta));
        }
        Ok(self.norm_constant * self.raw_f(theta, &mut Vec::new()))
    }

    /// `F` at many angles, reusing one scratch buffer.
    pub fn eval_many(&self, thetas: &[f64]) -> Result<Vec<f64>> {
        let mut scratch = Vec::with_capacity(self.truncation + 1);
        thetas
            .iter()
            .map(|&t| {
                if !(t > 0.0 && t < PI) {
                    return Err(Error::OutOfDomain(t));
                }
                Ok(self.norm_constant * self.raw_f(t, &mut scratch))
            })
            .collect()
    }

    /// `Ψ(θ, φ) = e^{imφ} F(θ)`.
    pub fn eval_psi(&self, theta: f64, phi: f64) -> Result<Complex64> {
        let f = self.eval_f(theta)?;
        Ok(Complex64::from_polar(1.0, self.config.m() as f64 * phi) * f)
    }

    /// `2π ∫₀^π |F|² sin θ dθ` with about `points` Gauss–Legendre nodes.
    pub fn norm_integral(&self, points: usize) -> f64 {
        let panels = (points / ORDER).max(1);
        let rule = CompositeRule::new(0.0, PI, panels, ORDER);
        let mut scratch = Vec::with_capacity(self.truncation + 1);
        let raw = rule.integrate(|t| {
            let f = self.raw_f(t, &mut scratch);
            f * f * t.sin()
        });
        2.0 * PI * self.norm_constant * self.norm_constant * raw
    }

    /// Rescales so that `2π ∫ |F|² sin θ dθ = 1`.
    pub fn normalize(mut self, points: usize) -> Result<Self> {
        let integral = self.norm_integral(points);
        if !(integral > 0.0) || !integral.is_finite() {
            return Err(Error::ZeroNorm);
        }
        self.norm_constant /= integral.sqrt();
        Ok(self)
    }

    /// Largest residual of the radial equation over `grid`, relative to
    /// `max|F|·(|ε| + S² + 1)`. Derivatives by 5-point central differences.
    pub fn ode_residual(&self, grid: &[f64]) -> Result<f64> {
        let h = FD_STEP;
        let c = &self.config;
        let (s, m, q) = (c.s(), c.m() as f64, c.coulomb());
        let eps = self.level.epsilon;
        let mut worst = 0.0f64;
        let mut peak = 0.0f64;
        for &t in grid {
            let pts = [t - 2.0 * h, t - h, t, t + h, t + 2.0 * h];
            let f = self.eval_many(&pts)?;
            // Differences against the centre first: exact for constants.
            let d: Vec<f64> = f.iter().map(|v| v - f[2]).collect();
            let d1 = (8.0 * (d[3] - d[1]) - (d[4] - d[0])) / (12.0 * h);
            let d2 = (16.0 * (d[1] + d[3]) - (d[0] + d[4])) / (12.0 * h * h);
            let (sin, cos) = t.sin_cos();
            let coef = -(m * m + s * s - 2.0 * m * s * cos) / (sin * sin) - q / (0.5 * t).sin() + eps + s * s;
            worst = worst.max((d2 + cos / sin * d1 + coef * f[2]).abs());
            peak = peak.max(f[2].abs());
        }
        if peak == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(worst / (peak * (eps.abs() + s * s + 1.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::problem_roots;
    use crate::spectrum::{spectrum, ScanSettings};

    fn cfg(s: f64, m: i64, q: f64) -> PhysicalConfig {
        PhysicalConfig::new(s, m, q).unwrap()
    }

    fn level(c: &PhysicalConfig, n: usize) -> EnergyLevel {
        spectrum(c, n, &ScanSettings::default()).unwrap()[n - 1]
    }

    fn bare_ground() -> (PhysicalConfig, EnergyLevel) {
        let c = cfg(0.0, 0, 0.0);
        let l = EnergyLevel { n: 1, m: 0, epsilon: 0.0, h_n: Some(0.0), cf_residual: 0.0 };
        (c, l)
    }

    fn interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|i| PI * (lo + (hi - lo) * i as f64 / n as f64)).collect()
    }

    #[test]
    fn hyp_poly_examples() {
        assert_eq!(hyp_poly(0, 3.0, 4.0, 0.7).unwrap(), 1.0);
        // 1 - (7/3)(0.5): the second parameter is ν + δ + γ - 1 = 7.
        assert!((hyp_poly(1, 3.0, 4.0, 0.5).unwrap() + 1.0 / 6.0).abs() < 1e-15);
        // Pochhammer brute force: Σ (-3)_k (9)_k / ((3)_k k!) x^k.
        let poch = |a: f64, k: usize| (0..k).map(|i| a + i as f64).product::<f64>();
        let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
        let x: f64 = 0.3;
        let brute: f64 = (0..=3)
            .map(|k| poch(-3.0, k) * poch(9.0, k) / (poch(3.0, k) * fact(k)) * x.powi(k as i32))
            .sum();
        assert!((hyp_poly(3, 3.0, 4.0, x).unwrap() - brute).abs() < 1e-14);
        assert_eq!(hyp_poly(2, -1.0, 1.0, 0.2), Err(Error::GammaPole { k: 1, gamma: -1.0 }));
    }

    #[test]
    fn jacobi_sequence_matches_series() {
        let mut ys = Vec::new();
        for &(gamma, delta) in &[(3.0, 4.0), (1.0, 1.0), (11.0, 6.0), (2.4, 9.3)] {
            for &x in &[0.0, 0.2, 0.55, 0.9, 1.0] {
                hyp_sequence(12, gamma, gamma + delta - 1.0, x, &mut ys);
                for (nu, y) in ys.iter().enumerate() {
                    let s = hyp_poly(nu, gamma, delta, x).unwrap();
                    // The series cancels badly near x = 1; bound by Σ|t_k|.
                    let abs_sum = hyp_poly(nu, gamma, delta, -x).unwrap().abs();
                    assert!((y - s).abs() < 1e-13 * abs_sum.max(1.0), "{nu} {x} {y} {s}");
                }
            }
        }
    }

    #[test]
    fn coefficient_ratio_matches_fraction_tail() {
        let c = cfg(5.0, 2, 100.0);
        let eps = level(&c, 1).epsilon;
        let coeffs = coefficients(&c, eps, 400).unwrap();
        let rec = Recurrence::new(&c, eps);
        let tail = crate::contfrac::lentz_eval(
            |nu| {
                if nu == 0 {
                    return (0.0, 0.0);
                }
                let k = rec.coeffs(nu).unwrap();
                let a = if nu == 1 { -k.k } else { -rec.coeffs(nu - 1).unwrap().m * k.k };
                (a, k.l)
            },
            1e-15,
            100_000,
        );
        assert!((coeffs[1] - tail.value).abs() < 1e-8 * tail.value.abs().max(1.0));
    }

    #[test]
    fn tail_ratio_approaches_smaller_root() {
        let c = cfg(5.0, 2, 100.0);
        let eps = level(&c, 1).epsilon;
        let coeffs = coefficients(&c, eps, 400).unwrap();
        let rho1 = problem_roots().rho1_abs;
        assert!((rho1 - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-14);
        // Well before underflow, the minimal solution decays at |ρ₁|.
        let nu = 200;
        let r = (coeffs[nu + 1] / coeffs[nu]).abs();
        assert!((r - rho1).abs() < 0.05 * rho1, "{r}");
    }

    #[test]
    fn free_sphere_ground_state() {
        let (c, l) = bare_ground();
        let coeffs = coefficients(&c, 0.0, 400).unwrap();
        assert_eq!(coeffs[0], 1.0);
        assert!(coeffs[1..].iter().all(|x| x.abs() < 1e-10));
        let wf = WaveFunction::new(&c, l).unwrap();
        let expected = 1.0 / (4.0 * PI).sqrt();
        assert!((wf.norm_constant - expected).abs() < 1e-12);
        for t in [0.1, 1.0, 2.0, 3.0] {
            assert!((wf.eval_f(t).unwrap() - expected).abs() < 1e-12);
        }
        assert!(wf.ode_residual(&interior(0.05, 0.95, 50)).unwrap() < 1e-10);
    }

    #[test]
    fn normalization() {
        let c = cfg(5.0, 2, 100.0);
        let wf = WaveFunction::new(&c, level(&c, 2)).unwrap();
        assert!((wf.norm_integral(DEFAULT_QUADRATURE_POINTS) - 1.0).abs() < 1e-8);
        let twice = wf.clone().normalize(DEFAULT_QUADRATURE_POINTS).unwrap();
        assert!((twice.norm_constant / wf.norm_constant - 1.0).abs() < 1e-12);
        let fine = wf.clone().normalize(2 * DEFAULT_QUADRATURE_POINTS).unwrap();
        assert!((fine.norm_constant / wf.norm_constant - 1.0).abs() < 1e-8);
    }

    #[test]
    fn vanishes_at_repulsive_pole() {
        let c = cfg(5.0, 2, 100.0);
        let wf = WaveFunction::new(&c, level(&c, 1)).unwrap();
        let near = wf.eval_f(1e-4).unwrap().abs();
        let bulk = wf.eval_f(PI / 2.0).unwrap().abs().max(wf.eval_f(2.0).unwrap().abs());
        assert!(near < 1e-8 * bulk);
        assert!(wf.eval_f(0.0).is_err() && wf.eval_f(PI).is_err());
    }

    #[test]
    fn psi_modulus_is_phase_free() {
        let c = cfg(2.0, -3, 10.0);
        let wf = WaveFunction::new(&c, level(&c, 1)).unwrap();
        let r = wf.eval_psi(1.2, 0.0).unwrap().norm();
        for phi in [0.3, 1.7, 4.0] {
            assert!((wf.eval_psi(1.2, phi).unwrap().norm() - r).abs() < 1e-14 * r.max(1.0));
        }
    }

    #[test]
    fn residuals_detect_eigenvalues() {
        let grid = interior(0.05, 0.95, 80);
        let c = cfg(5.0, 2, 1e-8);
        let l = level(&c, 1);
        let good = WaveFunction::new(&c, l).unwrap();
        let good_res = good.ode_residual(&grid).unwrap();
        assert!(good_res < 1e-6, "{good_res}");

        let shifted = EnergyLevel { epsilon: l.epsilon + 1e-3, ..l };
        let bad = WaveFunction::new(&c, shifted).unwrap();
        assert!(bad.ode_residual(&grid).unwrap() >= 10.0 * good_res);

        for (c, n) in [(cfg(5.0, 2, 100.0), 3), (cfg(2.0, -3, 10.0), 2), (cfg(3.5, 1, 5.0), 1)] {
            let wf = WaveFunction::new(&c, level(&c, n)).unwrap();
            assert!(wf.ode_residual(&grid).unwrap() < 1e-6);
        }
    }

    #[test]
    fn m_zero_reflection() {
        let c = cfg(3.0, 0, 20.0);
        let l = level(&c, 1);
        let a = WaveFunction::new(&c, l).unwrap();
        let b = WaveFunction::new(&cfg(3.0, -0, 20.0), l).unwrap();
        assert_eq!(a.eval_f(0.7).unwrap(), b.eval_f(0.7).unwrap());
    }
}
