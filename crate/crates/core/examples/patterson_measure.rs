//! Patterson estimates of the boundary measure on equal arcs, the exponent
//! ladder, the comparison with the visual measure of a lattice, and the
//! conformal transformation law.

use hyperorbit::geometry::{BoundaryArc, ModelPoint};
use hyperorbit::group::gamma2;
use hyperorbit::measure::*;
use hyperorbit::orbit::{enumerate_ball, BallQuery};

fn main() -> hyperorbit::Result<()> {
    let spec = gamma2();
    let x = ModelPoint::i();
    let y = ModelPoint::h2(0.0, 2.0)?;
    let delta = 1.0;
    let part = BoundaryArc::equal_partition(x, 8, 0.1)?;
    let records = enumerate_ball(&spec, &BallQuery::new(x, x, 12.0)?)?;

    for trunc in [Truncation::plain(12.0), Truncation::new(12.0)] {
        let ladder = patterson_ladder(&records, &x, delta, &trunc, &part, &DEFAULT_LADDER)?;
        let tv = ladder.extrapolated.total_variation(&visual_reference(&x, &part)?)?;
        println!("tail shell {:?}: TV to visual = {tv:.4}, ladder spread = {:.4}", trunc.tail_shell, ladder.max_spread());
        println!("  masses {:.4?}", ladder.extrapolated.masses);
    }

    // conformal law between x and y, both sums over the orbit of x
    let trunc = Truncation::new(12.0);
    let part16 = BoundaryArc::equal_partition(x, 16, 0.1)?;
    let part_y = part16.iter().map(|a| a.rebased(y)).collect::<hyperorbit::Result<Vec<_>>>()?;
    let ry = enumerate_ball(&spec, &BallQuery::new(y, x, 12.0)?)?;
    let s = delta + 0.02;
    let nx = patterson_from_records(&records, &x, s, delta, &trunc, &part16)?;
    let ny = patterson_from_records(&ry, &y, s, delta, &trunc, &part_y)?;
    let conf = conformal_check(&nx, &ny, delta)?;
    println!("conformal residuals over 16 arcs: mean {:.4}, max {:.4}", conf.mean_abs, conf.max_abs);
    Ok(())
}
