use serde::Serialize;
use serde_json::{Map, Value};
use std::fmt;
use std::path::Path;

use crate::error::Result;
use crate::fmt::sig12;

/// How a check compares `observed` with `target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|observed − target| ≤ tolerance`.
    Within,
    /// `observed ≤ target + tolerance`.
    AtMost,
    /// `observed ≥ target − tolerance`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub target: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
    /// Informational checks are printed but do not affect the exit code.
    pub hard: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, observed: f64, target: f64, tolerance: f64, comparison: Comparison) -> Self {
        let pass = match comparison {
            Comparison::Within => (observed - target).abs() <= tolerance,
            Comparison::AtMost => observed <= target + tolerance,
            Comparison::AtLeast => observed >= target - tolerance,
        };
        Check { name: name.into(), observed, target, tolerance, comparison, pass, hard: true }
    }

    pub fn within(name: impl Into<String>, observed: f64, target: f64, tolerance: f64) -> Self {
        Self::new(name, observed, target, tolerance, Comparison::Within)
    }

    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self::new(name, observed, bound, 0.0, Comparison::AtMost)
    }

    /// A yes/no condition, reported as 1 against a target of 1.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::within(name, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    pub fn soft(mut self) -> Self {
        self.hard = false;
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.pass, self.hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "WARN",
        };
        let rel = match self.comparison {
            Comparison::Within => format!("target {} ± {}", sig12(self.target), sig12(self.tolerance)),
            Comparison::AtMost => format!("bound ≤ {}", sig12(self.target + self.tolerance)),
            Comparison::AtLeast => format!("bound ≥ {}", sig12(self.target - self.tolerance)),
        };
        write!(f, "{status} {}: observed {} ({rel})", self.name, sig12(self.observed))
    }
}

/// Experiment report: config echo, per-T tables, fitted values and checks.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    pub config: Value,
    pub tables: Map<String, Value>,
    pub fitted: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(experiment: impl Into<String>, config: Value) -> Self {
        Report { experiment: experiment.into(), config, tables: Map::new(), fitted: Map::new(), checks: Vec::new() }
    }

    pub fn table(&mut self, name: &str, rows: impl Serialize) -> Result<()> {
        self.tables.insert(name.to_string(), serde_json::to_value(rows)?);
        Ok(())
    }

    pub fn fit(&mut self, name: &str, value: impl Serialize) -> Result<()> {
        self.fitted.insert(name.to_string(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// True when every hard check passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || !c.hard)
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.checks.iter().map(|c| c.to_string()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    /// Absorbs another report's checks, tables and fitted values under a prefix.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.tables {
            self.tables.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.fitted {
            self.fitted.insert(format!("{prefix}.{k}"), v);
        }
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }
}
