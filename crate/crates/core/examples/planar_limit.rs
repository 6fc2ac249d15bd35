//! Ground-level Coulomb shift as the sphere grows with `coulomb ∝ √S`.

use heun_sphere::limits::planar_limit_check;

fn main() -> Result<(), heun_sphere::Error> {
    let s = [25.0, 50.0, 100.0, 200.0, 400.0];
    for scale in [0.5, 1.0, 2.0] {
        let r = planar_limit_check(0, |s| scale * s.sqrt(), &s)?;
        println!("coulomb = {scale} sqrt(S), converged: {}", r.converged);
        for i in 0..s.len() {
            println!("  S = {:>5}  shift {:>10.5}  shift/4S {:.6}", s[i], r.shifts[i], r.scaled_levels[i]);
        }
    }
    Ok(())
}
