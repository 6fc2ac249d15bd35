//! Acceptance gate. Each test prints one `criterion N: PASS|FAIL` line
//! (straight to stderr, so it shows even when output is captured) and then
//! asserts the same condition.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use heun_sphere::classical::{bohr_sommerfeld_level, potential_minimum};
use heun_sphere::contfrac::{lentz_eval, HeunFraction};
use heun_sphere::limits::{landau_level, planar_limit_check, vanishing_coulomb_level};
use heun_sphere::oracle::{oracle_spectrum, richardson};
use heun_sphere::recursion::problem_roots;
use heun_sphere::wavefunction::{coefficients, hyp_poly, WaveFunction, DEFAULT_QUADRATURE_POINTS};
use heun_sphere::{spectrum, EnergyLevel, PhysicalConfig, ScanSettings};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn report(id: u32, title: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("\ncriterion {id:>2}: {verdict}  {title}  [{detail}]\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn cfg(s: f64, m: i64, q: f64) -> PhysicalConfig {
    PhysicalConfig::new(s, m, q).unwrap()
}

fn levels(c: &PhysicalConfig, n: usize) -> Vec<EnergyLevel> {
    spectrum(c, n, &ScanSettings::default()).unwrap()
}

fn ground(s: f64, m: i64, q: f64) -> f64 {
    levels(&cfg(s, m, q), 1)[0].epsilon
}

fn grid_configs() -> Vec<PhysicalConfig> {
    let mut out = Vec::new();
    for s in [2.0, 5.0, 10.0] {
        for m in [-2, 0, 3] {
            for q in [10.0, 100.0] {
                out.push(cfg(s, m, q));
            }
        }
    }
    out
}

#[test]
fn criterion_01_sphere_laplacian() {
    let start = Instant::now();
    let c = cfg(0.0, 0, 0.0);
    let exact = [0.0, 2.0, 6.0];
    let cf: Vec<f64> = levels(&c, 3).iter().map(|l| l.epsilon).collect();
    let fd = oracle_spectrum(&c, 3, 4000).unwrap();
    let cf_err = cf.iter().zip(exact).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let fd_err = fd.iter().zip(exact).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = cf_err < 1e-6 && fd_err < 2e-3 && elapsed < Duration::from_secs(5);
    report(1, "free sphere spectrum", pass, format!("cf err {cf_err:.2e}, fd err {fd_err:.2e}, {elapsed:.2?}"));
    assert!(pass);
}

#[test]
fn criterion_02_landau_limit() {
    let start = Instant::now();
    let e: Vec<f64> = levels(&cfg(5.0, 2, 1e-8), 2).iter().map(|l| l.epsilon).collect();
    let elapsed = start.elapsed();
    let pass = (e[0] - 5.0).abs() < 1e-3 && (e[1] - 17.0).abs() < 1e-3 && elapsed < Duration::from_secs(10);
    report(2, "weak-coulomb levels 5, 17", pass, format!("{e:?}, {elapsed:.2?}"));
    assert!(pass);
}

#[test]
fn criterion_03_vanishing_coulomb_formula() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut mismatches = 0;
    for _ in 0..100 {
        let s = rng.gen_range(0.0..50.0);
        let m = rng.gen_range(-60..=60);
        if vanishing_coulomb_level(s, m).to_bits() != landau_level(s, m, 0).to_bits() {
            mismatches += 1;
        }
    }
    let pass = mismatches == 0;
    report(3, "ground Landau level bit-identical", pass, format!("{mismatches}/100 mismatches"));
    assert!(pass);
}

#[test]
fn criterion_04_oracle_equivalence() {
    let start = Instant::now();
    let mut worst = (0.0f64, String::new());
    for c in grid_configs() {
        let cf: Vec<f64> = levels(&c, 3).iter().map(|l| l.epsilon).collect();
        let fd = richardson(&c, 3, 8000).unwrap();
        for (x, y) in cf.iter().zip(&fd) {
            let rel = (x - y).abs() / y.abs().max(1.0);
            if rel > worst.0 {
                worst = (rel, format!("S={} m={} c={}", c.s(), c.m(), c.coulomb()));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst.0 < 1e-3 && elapsed < Duration::from_secs(300);
    report(4, "cf vs finite differences on 18 configs", pass, format!("max rel {:.2e} at {}, {elapsed:.2?}", worst.0, worst.1));
    assert!(pass);
}

#[test]
fn criterion_05_classical_lower_bound() {
    let mut violations = Vec::new();
    let mut min_gap = f64::INFINITY;
    for c in grid_configs() {
        let eps0 = potential_minimum(&c).eps0;
        for l in levels(&c, 3) {
            min_gap = min_gap.min(l.epsilon - eps0);
            if !(l.epsilon > eps0) {
                violations.push((c.s(), c.m(), c.coulomb(), l.n));
            }
        }
    }
    let pass = violations.is_empty();
    report(5, "levels above the potential minimum", pass, format!("min gap {min_gap:.3}, violations {violations:?}"));
    assert!(pass);
}

#[test]
fn criterion_06_wavefunction_residual() {
    let grid: Vec<f64> = (0..=180).map(|i| PI * (0.05 + 0.9 * i as f64 / 180.0)).collect();
    let mut cases: Vec<(PhysicalConfig, EnergyLevel)> =
        levels(&cfg(5.0, 2, 1e-8), 2).into_iter().map(|l| (cfg(5.0, 2, 1e-8), l)).collect();
    let c4 = cfg(10.0, -2, 100.0);
    cases.push((c4, levels(&c4, 3)[2]));

    let mut worst_res = 0.0f64;
    let mut worst_norm = 0.0f64;
    for (c, l) in cases {
        let wf = WaveFunction::new(&c, l).unwrap();
        worst_res = worst_res.max(wf.ode_residual(&grid).unwrap());
        worst_norm = worst_norm.max((wf.norm_integral(DEFAULT_QUADRATURE_POINTS) - 1.0).abs());
    }
    let pass = worst_res < 1e-6 && worst_norm < 1e-8;
    report(6, "eigenfunctions solve the radial equation", pass, format!("residual {worst_res:.2e}, norm err {worst_norm:.2e}"));
    assert!(pass);
}

/// Second difference of `f` on a uniform grid, at interior points.
fn second_differences(f: &[f64]) -> Vec<f64> {
    f.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[test]
fn criterion_07_kink_at_m_equals_s() {
    let s: Vec<f64> = (0..=56).map(|i| 1.0 + 0.25 * i as f64).collect();
    let e: Vec<f64> = s.iter().map(|&s| ground(s, -5, 100.0)).collect();
    let d2: Vec<f64> = second_differences(&e).iter().map(|x| x.abs()).collect();
    // d2[i] sits at s[i + 1]; S = 5 is s[16].
    let at_kink = d2[15];
    let med = median(d2.clone());
    let pass = at_kink > 10.0 * med;
    report(7, "slope kink at S = |m|", pass, format!("|d2| at S=5 {at_kink:.4}, median {med:.4}, ratio {:.1}", at_kink / med));
    assert!(pass);
}

#[test]
fn criterion_08_level_crossing() {
    let s: Vec<f64> = (0..=116).map(|i| 1.0 + 0.25 * i as f64).collect();
    let diff: Vec<f64> = s.iter().map(|&s| ground(s, 2, 100.0) - ground(s, -2, 100.0)).collect();
    let changes = diff.windows(2).filter(|p| (p[0] < 0.0) != (p[1] < 0.0)).count();
    let (lo, hi) = diff.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &d| (a.min(d), b.max(d)));
    let pass = changes > 0;
    report(
        8,
        "sign change of e(1,2) - e(1,-2) for S in [1, 30]",
        pass,
        format!("{changes} sign changes, difference ranges over [{lo:.3}, {hi:.3}]"),
    );
    assert!(pass);
}

#[test]
fn criterion_09_semiclassical_consistency() {
    let c = cfg(5.0, 2, 100.0);
    let bs = bohr_sommerfeld_level(&c, 7).unwrap();
    let quantum = levels(&c, 8)[7].epsilon;
    let rel = (bs - quantum).abs() / quantum;
    let pass = rel < 0.05;
    report(9, "quantization rule n=7 vs 8th level", pass, format!("{bs:.4} vs {quantum:.4}, rel {rel:.2e}"));
    assert!(pass);
}

#[test]
fn criterion_10_planar_limit_trend() {
    let r = planar_limit_check(0, |s| s.sqrt(), &[25.0, 50.0, 100.0, 200.0]).unwrap();
    let diffs: Vec<f64> = r.shifts.windows(2).map(|p| p[1] - p[0]).collect();
    let pass = diffs.windows(2).all(|p| p[1] < p[0]);
    report(
        10,
        "planar-limit shift differences decrease",
        pass,
        format!("shifts {:?}, differences {:?}, shift/4S {:?}", r.shifts, diffs, r.scaled_levels),
    );
    assert!(pass);
}

/// Bottom-up evaluation of the fraction truncated at `depth`.
fn truncated(frac: &HeunFraction, depth: usize) -> f64 {
    let mut tail = 0.0;
    for nu in (1..=depth).rev() {
        let (a, b) = frac.partial(nu).unwrap();
        tail = a / (b + tail);
    }
    frac.partial(0).unwrap().1 + tail
}

#[test]
fn criterion_11_numerical_infrastructure() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut cf_worst = 0.0f64;
    for _ in 0..50 {
        let c = cfg(rng.gen_range(0.0..10.0), rng.gen_range(-5..=5), rng.gen_range(0.0..100.0));
        let eps = potential_minimum(&c).eps0 + rng.gen_range(0.0..200.0);
        let frac = HeunFraction::new(&c, eps);
        let lentz = lentz_eval(|nu| frac.partial(nu).unwrap(), 1e-15, 100_000).value;
        let bottom_up = truncated(&frac, 200);
        cf_worst = cf_worst.max((lentz - bottom_up).abs() / bottom_up.abs().max(1.0));
    }

    // Pochhammer brute force of the terminating hypergeometric series.
    let poch = |a: f64, k: usize| (0..k).map(|i| a + i as f64).product::<f64>();
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let brute = |nu: usize, g: f64, d: f64, x: f64| -> (f64, f64) {
        let terms: Vec<f64> = (0..=nu)
            .map(|k| poch(-(nu as f64), k) * poch(nu as f64 + d + g - 1.0, k) / (poch(g, k) * fact(k)) * x.powi(k as i32))
            .collect();
        (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
    };
    let mut hyp_worst = (hyp_poly(3, 3.0, 4.0, 0.3).unwrap() - brute(3, 3.0, 4.0, 0.3).0).abs();
    for _ in 0..50 {
        let (nu, g, d, x) = (rng.gen_range(0..8), rng.gen_range(0.5..6.0), rng.gen_range(0.5..6.0), rng.gen_range(0.0..1.0));
        let (sum, scale) = brute(nu, g, d, x);
        hyp_worst = hyp_worst.max((hyp_poly(nu, g, d, x).unwrap() - sum).abs() / scale.max(1.0));
    }

    let c = cfg(5.0, 2, 100.0);
    let coeffs = coefficients(&c, levels(&c, 1)[0].epsilon, 400).unwrap();
    let ratio = (coeffs[201] / coeffs[200]).abs();
    let rho1 = problem_roots().rho1_abs;
    let ratio_err = (ratio - (3.0 - 2.0 * 2f64.sqrt())).abs() / rho1;

    let pass = cf_worst < 1e-10 && hyp_worst < 1e-14 && ratio_err < 0.05;
    report(
        11,
        "fraction, series and coefficient-tail checks",
        pass,
        format!("lentz vs truncated {cf_worst:.2e}, series {hyp_worst:.2e}, tail ratio {ratio:.5} ({:.1}% off)", 100.0 * ratio_err),
    );
    assert!(pass);
}
