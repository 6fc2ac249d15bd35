//! The eigencondition along the energy axis: the Lentz value of the fraction
//! next to its pole-free characteristic form. The fraction jumps through a
//! pole beside each level; the characteristic function only crosses zero.

use heun_sphere::contfrac::{cf_value, characteristic_value, DEFAULT_MAX_ITER, DEFAULT_TOL};
use heun_sphere::PhysicalConfig;

fn main() -> Result<(), heun_sphere::Error> {
    let config = PhysicalConfig::new(5.0, 2, 100.0)?;
    println!("{:>8} {:>14} {:>10} {:>6}", "epsilon", "fraction", "charact.", "iters");
    let mut e = 140.0;
    while e <= 175.0 {
        let cf = cf_value(&config, e, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        let d = characteristic_value(&config, e)?;
        println!("{e:>8.2} {:>14.5e} {d:>10.5} {:>6}", cf.value, cf.iterations);
        e += 1.0;
    }
    Ok(())
}
