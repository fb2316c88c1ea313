//! Critical exponents by log-count regression and by bracketing the
//! abscissa of convergence of the Poincaré series.

use hyperorbit::geometry::ModelPoint;
use hyperorbit::group::{builtin, gamma2};
use hyperorbit::measure::estimate_delta_in;
use hyperorbit::orbit::{count_growth, EnumerationOptions};

fn main() -> hyperorbit::Result<()> {
    let grid: Vec<f64> = (1..=26).map(|k| 0.5 * k as f64).collect();
    let opts = EnumerationOptions::default();
    let x = ModelPoint::i();
    let table = count_growth(&gamma2(), &x, &x, &grid, &opts)?;
    let est = estimate_delta_in(&table, (8.0, 13.0))?;
    println!(
        "gamma2: regression {:.4} ± {:.4}, bracket {:.4} (a lattice, δ = 1)",
        est.regression.value, est.regression.stderr, est.poincare.value
    );

    let grid: Vec<f64> = (1..=32).map(|k| 0.5 * k as f64).collect();
    for name in ["schottky_h2", "schottky_h3"] {
        let spec = builtin(name)?;
        let o = ModelPoint::origin(spec.model());
        let table = count_growth(&spec, &o, &o, &grid, &opts)?;
        let est = estimate_delta_in(&table, (8.0, 16.0))?;
        println!(
            "{name}: regression {:.4} ± {:.4}, bracket {:.4}",
            est.regression.value, est.regression.stderr, est.poincare.value
        );
    }
    Ok(())
}
