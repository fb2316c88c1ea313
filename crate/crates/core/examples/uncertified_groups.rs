//! Best-effort enumeration for a group without a ping-pong certificate:
//! words up to a fixed length, deduplicated by matrix.

use hyperorbit::geometry::ModelPoint;
use hyperorbit::group::modular;
use hyperorbit::orbit::{enumerate_ball, enumerate_dedup, BallQuery};

fn main() -> hyperorbit::Result<()> {
    let spec = modular();
    let x = ModelPoint::h2(0.1, 1.3)?;
    let q = BallQuery::new(x, x, 5.0)?;
    if let Err(e) = enumerate_ball(&spec, &q) {
        println!("pruned search refused: {e}");
    }
    for len in [4, 6, 8, 10] {
        let res = enumerate_dedup(&spec, &q, len)?;
        println!(
            "L = {len:2}: {:6} words, {:5} distinct elements, {} in the ball, {} warnings",
            res.word_count,
            res.element_count,
            res.records.len(),
            res.warnings.len()
        );
    }
    Ok(())
}
