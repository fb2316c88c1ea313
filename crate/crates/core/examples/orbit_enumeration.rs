//! Certified orbit enumeration in a ball, checked against brute force, and
//! written as CSV.

use hyperorbit::geometry::ModelPoint;
use hyperorbit::group::{builtin, gamma2};
use hyperorbit::orbit::*;

fn main() -> hyperorbit::Result<()> {
    let spec = gamma2();
    let x = ModelPoint::i();
    let q = BallQuery::new(x, x, 8.0)?;
    let en = enumerate_ball_with(&spec, &q, &EnumerationOptions::default())?;
    println!(
        "gamma2, T = 8: {} elements, {} nodes visited, {} subtrees pruned",
        en.records.len(),
        en.stats.visited,
        en.stats.pruned
    );
    for r in en.records.iter().take(6) {
        println!("  {:10} d = {:.6}", spec.render_word(&r.word), r.dist);
    }

    // the pruned search agrees with exhaustive expansion of short words
    let schottky = builtin("schottky_h2")?;
    let q = BallQuery::new(x, x, 8.0)?;
    let a = enumerate_ball(&schottky, &q)?;
    let b = brute_force_ball(&schottky, &q, 12)?;
    println!("schottky_h2, T = 8: pruned {} / brute force {}", a.len(), b.len());

    let csv = orbit_csv_string(&spec, &x, &enumerate_ball(&spec, &BallQuery::new(x, x, 4.0)?)?)?;
    print!("{}", csv.lines().take(5).map(|l| format!("{l}\n")).collect::<String>());

    // growth of the orbit count
    let grid: Vec<f64> = (2..=10).map(f64::from).collect();
    let table = count_growth(&spec, &x, &x, &grid, &EnumerationOptions::default())?;
    for p in &table.points {
        println!("  N({:>4}) = {}", p.t, p.count);
    }
    Ok(())
}
