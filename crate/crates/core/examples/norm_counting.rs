//! Counting unimodular complex matrices by norm, cross-checked against the
//! hyperbolic distance in the upper half-space.

use hyperorbit::experiments::{mobius_norm_count, random_predicate_check};
use hyperorbit::geometry::BoundaryPoint;
use hyperorbit::group::{builtin, Region};
use hyperorbit::orbit::EnumerationOptions;
use num_complex::Complex64;

fn main() -> hyperorbit::Result<()> {
    let spec = builtin("schottky_h3")?;
    let z = BoundaryPoint::complex(0.5, 0.5);
    let omega = Region::Ball { center: Complex64::new(std::f64::consts::SQRT_2, 0.0), radius: 1.5 };
    for t in [4.0, 6.0, 8.0, 10.0] {
        let r = mobius_norm_count(&spec, &z, &omega, t, &EnumerationOptions::default())?;
        println!("T = {t:4}: {} of {} elements land in Ω", r.norm_count, r.candidates);
    }
    let random = random_predicate_check(10_000, 1, &[1.0, 2.0, 4.0, 8.0]);
    println!("random matrices: {} inside, {} mismatches", random.inside, random.mismatches);
    Ok(())
}
