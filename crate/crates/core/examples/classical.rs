//! Classical picture of the polar motion and semiclassical levels against
//! the exact ones.

use heun_sphere::classical::{bohr_sommerfeld_level, orbit, potential_minimum};
use heun_sphere::{spectrum, PhysicalConfig, ScanSettings};

fn main() -> Result<(), heun_sphere::Error> {
    let config = PhysicalConfig::new(5.0, 2, 100.0)?;
    let min = potential_minimum(&config);
    println!("potential minimum {:.6} at theta = {:.6}", min.eps0, min.theta_star);

    let exact = spectrum(&config, 10, &ScanSettings::default())?;
    println!("{:>3} {:>12} {:>12} {:>9} {:>9} {:>9}", "n", "semiclass.", "exact", "rel", "theta1", "theta2");
    for (n, level) in exact.iter().enumerate() {
        let bs = bohr_sommerfeld_level(&config, n as u32)?;
        let o = orbit(&config, bs)?;
        println!(
            "{n:>3} {bs:>12.5} {:>12.5} {:>9.2e} {:>9.5} {:>9.5}",
            level.epsilon,
            (bs - level.epsilon) / level.epsilon,
            o.theta1,
            o.theta2
        );
    }
    Ok(())
}
