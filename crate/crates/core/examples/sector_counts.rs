//! Sector counts `N_T(Ω₁, Ω₂)` and the factorization ratio on Γ(2).

use hyperorbit::geometry::{BoundaryArc, BoundaryPoint, BoundarySet, ModelPoint};
use hyperorbit::experiments::SectorCountResult;
use hyperorbit::group::gamma2;
use hyperorbit::orbit::{enumerate_ball, BallQuery};
use std::f64::consts::FRAC_PI_2;

fn main() -> hyperorbit::Result<()> {
    let x = ModelPoint::i();
    let q = BallQuery::new(x, x, 12.0)?.with_xi(BoundaryPoint::real(0.0));
    let records = enumerate_ball(&gamma2(), &q)?;
    let omega1 = BoundarySet::from_arcs(vec![BoundaryArc::new(x, 0.3, 0.3 + FRAC_PI_2)?]);
    let omega2 = BoundarySet::from_arcs(vec![BoundaryArc::new(x, 2.0, 2.0 + FRAC_PI_2)?]);
    let grid: Vec<f64> = (12..=24).map(|k| 0.5 * k as f64).collect();
    let res = SectorCountResult::from_records(&records, &omega1, &omega2, &grid, omega1.visual_mass(&x), omega2.visual_mass(&x))?;
    print!("{}", res.to_csv());
    println!("invariants hold: {}", res.invariants_hold());
    Ok(())
}
