//! With the charge switched (almost) off, the levels collapse onto
//! `(n + L)(n + L + 1) - S²`, `L = max(S, |m|)`.

use heun_sphere::limits::landau_level;
use heun_sphere::{spectrum, PhysicalConfig, ScanSettings};

fn main() -> Result<(), heun_sphere::Error> {
    let s = 5.0;
    println!("{:>3} {:>3} {:>16} {:>10} {:>10}", "m", "n", "cf", "landau", "diff");
    for m in [-7, -2, 0, 2, 5, 7] {
        let config = PhysicalConfig::new(s, m, 1e-8)?;
        for l in spectrum(&config, 3, &ScanSettings::default())? {
            let exact = landau_level(s, m, l.n as u32 - 1);
            println!("{m:>3} {:>3} {:>16.10} {exact:>10} {:>10.1e}", l.n, l.epsilon, l.epsilon - exact);
        }
    }
    Ok(())
}
