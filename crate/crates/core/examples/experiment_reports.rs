//! Running experiments from JSON configs and writing their reports.
//!
//! `cargo run --example experiment_reports -- theorem1 '{"t_grid": [10, 11, 12]}'`

use hyperorbit::experiments::{run, Experiment, ExperimentConfig};

fn main() -> hyperorbit::Result<()> {
    let mut args = std::env::args().skip(1);
    let exp = match args.next().as_deref() {
        Some("delta") => Experiment::Delta,
        Some("measure-ps") => Experiment::MeasurePs,
        Some("corollary13") => Experiment::Corollary13,
        Some("appendix") => Experiment::Appendix,
        Some("recurrence") => Experiment::Recurrence,
        _ => Experiment::Theorem1,
    };
    let patch = args.next().unwrap_or_else(|| "{}".into());
    let mut cfg = ExperimentConfig::from_json(exp, &patch)?;
    cfg.output_dir = Some(std::env::temp_dir().join("hyperorbit-reports"));
    let out = run(exp, &cfg)?;
    for line in out.report.summary_lines() {
        println!("{line}");
    }
    println!("report and tables in {}", cfg.output_dir.unwrap().display());
    Ok(())
}
