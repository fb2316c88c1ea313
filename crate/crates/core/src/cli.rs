//! Command-line front end.
//!
//! Every subcommand builds an [`ExperimentConfig`] from an optional JSON file
//! plus flags, runs the experiment, prints one line per check and exits with
//! 0 when every hard check passes, 1 on a failed check or runtime error, and
//! 2 on a bad configuration.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use std::ffi::OsString;
use std::path::PathBuf;

use crate::error::Error;
use crate::experiments::{run, Experiment, ExperimentConfig};

#[derive(Debug, Parser)]
#[command(name = "hyperorbit", version, about = "Orbit counting and boundary equidistribution experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Group specifications.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Orbit enumeration.
    Orbit {
        #[command(subcommand)]
        action: OrbitAction,
    },
    /// Critical exponent by regression and Poincaré bracketing.
    Delta(Common),
    /// Boundary measures.
    Measure {
        #[command(subcommand)]
        action: MeasureAction,
    },
    /// Equidistribution checks.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Seeded geometry property suite and enumeration oracle.
    Selftest(Common),
}

#[derive(Debug, Subcommand)]
enum GroupAction {
    /// Certify a builtin group or a group file.
    Validate(Common),
}

#[derive(Debug, Subcommand)]
enum OrbitAction {
    /// Enumerate the orbit in a ball and write it as CSV.
    Enum(Common),
}

#[derive(Debug, Subcommand)]
enum MeasureAction {
    /// Patterson estimate on equal boundary arcs.
    Ps(Common),
}

#[derive(Debug, Subcommand)]
enum VerifyAction {
    /// Sector counts and factorization ratios.
    Theorem1(Common),
    /// Matrix-norm counting against the distance predicate.
    Corollary13(Common),
    /// Weighted orbital averages.
    Appendix(Common),
    /// Counts of translates of a geodesic meeting a compact set.
    Recurrence(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// JSON config; keys override the experiment defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Builtin group name or path to a group file.
    #[arg(long)]
    group: Option<String>,
    /// Top of the T-grid (the ball radius for `orbit enum` and `corollary13`).
    #[arg(long = "T")]
    t: Option<f64>,
    /// Top of the growth grid used for exponent fits.
    #[arg(long = "Tmax")]
    t_max: Option<f64>,
    /// Fit window for the exponent, as `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    fit: Option<Vec<f64>>,
    /// Truncation radius of Patterson sums.
    #[arg(long = "R")]
    radius: Option<f64>,
    /// Number of equal arcs.
    #[arg(long)]
    arcs: Option<usize>,
    /// Basepoint x as coordinates, e.g. `0,1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<f64>>,
    /// Basepoint y as coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    y: Option<Vec<f64>>,
    /// Boundary point ξ: a real number, `re,im`, or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Word length for uncertified groups.
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for enumeration.
    #[arg(long)]
    threads: Option<usize>,
    /// Directory for the JSON report and CSV tables.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the full JSON report.
    #[arg(long)]
    json: bool,
}

fn half_grid(lo: f64, hi: f64) -> Vec<f64> {
    let n = ((hi - lo) / 0.5).floor() as usize;
    let mut g: Vec<f64> = (0..=n).map(|k| lo + 0.5 * k as f64).collect();
    if g.last().is_some_and(|&t| t < hi) {
        g.push(hi);
    }
    g
}

fn parse_boundary(s: &str) -> std::result::Result<Value, Error> {
    let s = s.trim();
    if matches!(s, "inf" | "infinity" | "∞") {
        return Ok(json!("inf"));
    }
    if let Ok(v) = s.parse::<f64>() {
        return Ok(json!(v));
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() == 2 {
        if let (Ok(a), Ok(b)) = (parts[0].trim().parse::<f64>(), parts[1].trim().parse::<f64>()) {
            return Ok(json!([a, b]));
        }
    }
    Ok(json!(s))
}

impl Common {
    fn config(&self, exp: Experiment) -> std::result::Result<ExperimentConfig, Error> {
        let base = ExperimentConfig::load(exp, self.config.as_deref())?;
        let mut patch = Map::new();
        if let Some(g) = &self.group {
            patch.insert("group".into(), json!(g));
        }
        if let Some(t) = self.t {
            let grid: Vec<f64> = base.t_grid.iter().cloned().filter(|&v| v < t).chain([t]).collect();
            patch.insert("t_grid".into(), json!(grid));
        }
        if let Some(t) = self.t_max {
            patch.insert("delta_grid".into(), json!(half_grid(0.5, t)));
        }
        if let Some(f) = &self.fit {
            patch.insert("fit_range".into(), json!(f));
        }
        if let Some(r) = self.radius {
            patch.insert("radius".into(), json!(r));
        }
        if let Some(n) = self.arcs {
            patch.insert("arcs".into(), json!(n));
        }
        if let Some(x) = &self.x {
            patch.insert("x".into(), json!(x));
        }
        if let Some(y) = &self.y {
            patch.insert("y".into(), json!(y));
        }
        if let Some(xi) = &self.xi {
            patch.insert("xi".into(), parse_boundary(xi)?);
        }
        if let Some(n) = self.max_len {
            patch.insert("dedup_length".into(), json!(n));
        }
        if let Some(s) = self.seed {
            patch.insert("seed".into(), json!(s));
        }
        if let Some(n) = self.threads {
            patch.insert("threads".into(), json!(n));
        }
        if let Some(o) = &self.out {
            patch.insert("output_dir".into(), json!(o));
        }
        base.patched(Value::Object(patch))
    }
}

fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_)
            | Error::UnknownGroup(_)
            | Error::UnknownLabel(_)
            | Error::RadiusCap { .. }
            | Error::WordLengthCap(_)
            | Error::Json(_)
            | Error::ModelMismatch(_)
            | Error::NonPositiveHeight(_)
            | Error::DegenerateArc(_)
            | Error::DegenerateGeodesic
    )
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (exp, common) = match &cli.command {
        Command::Group { action: GroupAction::Validate(c) } => (Experiment::GroupValidate, c),
        Command::Orbit { action: OrbitAction::Enum(c) } => (Experiment::OrbitEnum, c),
        Command::Delta(c) => (Experiment::Delta, c),
        Command::Measure { action: MeasureAction::Ps(c) } => (Experiment::MeasurePs, c),
        Command::Verify { action } => match action {
            VerifyAction::Theorem1(c) => (Experiment::Theorem1, c),
            VerifyAction::Corollary13(c) => (Experiment::Corollary13, c),
            VerifyAction::Appendix(c) => (Experiment::Appendix, c),
            VerifyAction::Recurrence(c) => (Experiment::Recurrence, c),
        },
        Command::Selftest(c) => (Experiment::Selftest, c),
    };
    let outcome = common.config(exp).and_then(|cfg| run(exp, &cfg));
    match outcome {
        Ok(out) => {
            for line in out.report.summary_lines() {
                println!("{line}");
            }
            if common.json {
                match out.report.to_json() {
                    Ok(s) => println!("{s}"),
                    Err(e) => eprintln!("error: {e}"),
                }
            }
            let ok = out.report.passed();
            println!("{} {}", if ok { "PASS" } else { "FAIL" }, exp.name());
            i32::from(!ok)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_config_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(half_grid(0.5, 2.0), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(half_grid(0.5, 1.2), vec![0.5, 1.0, 1.2]);
    }

    #[test]
    fn boundary_flags() {
        assert_eq!(parse_boundary("0.5").unwrap(), json!(0.5));
        assert_eq!(parse_boundary("1,2").unwrap(), json!([1.0, 2.0]));
        assert_eq!(parse_boundary("inf").unwrap(), json!("inf"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_cli(["hyperorbit", "group", "validate"]), 0);
        assert_eq!(run_cli(["hyperorbit", "group", "validate", "--group", "nonesuch"]), 2);
        assert_eq!(run_cli(["hyperorbit", "orbit", "enum", "--T", "40"]), 2);
        assert_eq!(run_cli(["hyperorbit", "frobnicate"]), 2);
    }
}
