//! Continued-fraction levels against the finite-difference oracle on a few
//! grids, with Richardson extrapolation.

use heun_sphere::oracle::{oracle_spectrum, richardson};
use heun_sphere::{spectrum, PhysicalConfig, ScanSettings};

fn main() -> Result<(), heun_sphere::Error> {
    for (s, m, q) in [(0.0, 0, 0.0), (5.0, 2, 100.0), (2.0, -3, 10.0)] {
        let config = PhysicalConfig::new(s, m, q)?;
        let cf = spectrum(&config, 3, &ScanSettings::default())?;
        println!("S = {s}, m = {m}, coulomb = {q}");
        for n in [1000, 2000, 4000] {
            let fd = oracle_spectrum(&config, 3, n)?;
            let err: Vec<String> = cf.iter().zip(&fd).map(|(l, e)| format!("{:9.2e}", l.epsilon - e)).collect();
            println!("  N = {n:>5}  cf - fd: {}", err.join(" "));
        }
        let extrap = richardson(&config, 3, 4000)?;
        let err: Vec<String> = cf.iter().zip(&extrap).map(|(l, e)| format!("{:9.2e}", l.epsilon - e)).collect();
        println!("  extrap.    cf - fd: {}", err.join(" "));
    }
    Ok(())
}
