//! Translates of a geodesic meeting a compact set: bounded for a geodesic
//! that misses the limit set, against the exponential growth of the orbit.

use hyperorbit::experiments::recurrence_test;
use hyperorbit::geometry::{BoundaryPoint, Geodesic, ModelPoint};
use hyperorbit::group::builtin;
use hyperorbit::orbit::{enumerate_ball, BallQuery};

fn main() -> hyperorbit::Result<()> {
    let spec = builtin("schottky_h2")?;
    let x = ModelPoint::i();
    let records = enumerate_ball(&spec, &BallQuery::new(x, x, 10.0)?)?;
    let geodesic = Geodesic::new(BoundaryPoint::real(0.0), BoundaryPoint::real(3.0))?;
    let grid: Vec<f64> = (12..=20).map(|k| 0.5 * k as f64).collect();
    let res = recurrence_test(&records, &geodesic, &x, 0.3, &grid)?;
    for row in &res.counts.rows {
        println!("T = {:4}: restricted {:3}, all {:4}", row.t, row.restricted, row.unrestricted);
    }
    println!("rates: restricted {:.4}, unrestricted {:.4}", res.restricted_rate, res.unrestricted_rate);
    println!(
        "cocycle bound checked on {} elements, {} violations",
        res.counts.cocycle_checked, res.counts.cocycle_violations
    );
    Ok(())
}
