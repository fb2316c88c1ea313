//! Weighted orbital averages `F(ζ, x, T)` for arc indicators and products,
//! with their stability in `ζ`.

use hyperorbit::experiments::{weighted_orbital_average, zeta_stability, ArcFunction, TestFunction};
use hyperorbit::geometry::{boundary_at_angle, BoundaryArc, ModelPoint};
use hyperorbit::group::gamma2;
use hyperorbit::orbit::{enumerate_ball, BallQuery};
use std::f64::consts::{FRAC_PI_2, TAU};

fn main() -> hyperorbit::Result<()> {
    let x = ModelPoint::i();
    let records = enumerate_ball(&gamma2(), &BallQuery::new(x, x, 12.0)?)?;
    let arc = BoundaryArc::new(x, 0.3, 0.3 + FRAC_PI_2)?;
    let grid = [8.0, 10.0, 12.0];
    let zetas: Vec<_> = (0..5).map(|k| boundary_at_angle(&x, TAU * k as f64 / 5.0)).collect();

    let f = TestFunction::First(ArcFunction::indicator(arc, 0.0));
    for avg in weighted_orbital_average(&records, &f, &zetas[1], &x, &grid)? {
        println!("T = {:4}: F = {:.5} over {} elements (visual mass 0.25)", avg.t, avg.value, avg.count);
    }
    let smooth = TestFunction::First(ArcFunction::indicator(arc, 0.1));
    println!("ζ-stability gaps: {:?}", zeta_stability(&records, &smooth, &zetas, &x, &grid)?);

    let g = ArcFunction::indicator(arc, 0.1);
    let h = ArcFunction::indicator(BoundaryArc::new(x, 2.0, 2.0 + FRAC_PI_2)?, 0.1);
    let prod = TestFunction::Product(g, h);
    for avg in weighted_orbital_average(&records, &prod, &zetas[0], &x, &grid)? {
        println!("T = {:4}: product {:.5}, factorization gap {:.2e}", avg.t, avg.value, avg.factorization_gap(&prod));
    }
    Ok(())
}
