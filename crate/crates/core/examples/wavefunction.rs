//! Rebuild an eigenfunction, check it against the radial equation and print
//! a coarse profile.

use std::f64::consts::PI;

use heun_sphere::{spectrum, PhysicalConfig, ScanSettings, WaveFunction};

fn main() -> Result<(), heun_sphere::Error> {
    let config = PhysicalConfig::new(5.0, 2, 100.0)?;
    let level = spectrum(&config, 2, &ScanSettings::default())?[1];
    let wf = WaveFunction::new(&config, level)?;

    let grid: Vec<f64> = (0..=90).map(|i| PI * (0.05 + 0.01 * i as f64)).collect();
    println!("epsilon          {:.10}", level.epsilon);
    println!("coefficients     {} (c1/c0 = {:.6})", wf.coeffs.len(), wf.coeffs[1]);
    println!("norm constant    {:.6e}", wf.norm_constant);
    println!("norm integral    {:.12}", wf.norm_integral(1024));
    println!("ode residual     {:.2e}", wf.ode_residual(&grid)?);

    let samples: Vec<f64> = (1..40).map(|i| PI * i as f64 / 40.0).collect();
    let values = wf.eval_many(&samples)?;
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (t, f) in samples.iter().zip(values) {
        let bar = "#".repeat((30.0 * f.abs() / peak).round() as usize);
        println!("{:6.3} {:+.4e} {bar}", t, f);
    }
    Ok(())
}
