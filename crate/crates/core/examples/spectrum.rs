//! Lowest levels of one configuration.
//!
//! cargo run --example spectrum -- [S] [m] [coulomb] [levels]

use heun_sphere::classical::potential_minimum;
use heun_sphere::{spectrum, PhysicalConfig, ScanSettings};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|a| a.parse().ok()).unwrap_or(default)
}

fn main() -> Result<(), heun_sphere::Error> {
    let config = PhysicalConfig::new(arg(1, 5.0), arg(2, 2), arg(3, 100.0))?;
    let levels = spectrum(&config, arg(4, 5), &ScanSettings::default())?;

    println!(
        "S = {}, m = {}, coulomb = {}, potential floor {:.6}",
        config.s(),
        config.m(),
        config.coulomb(),
        potential_minimum(&config).eps0
    );
    println!("{:>3} {:>22} {:>14} {:>10}", "n", "epsilon", "h_n", "residual");
    for l in levels {
        let h = l.h_n.map(|h| format!("{h:.8}")).unwrap_or_else(|| "-".into());
        println!("{:>3} {:>22.12} {:>14} {:>10.1e}", l.n, l.epsilon, h, l.cf_residual);
    }
    Ok(())
}
