use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::{boundary_at_angle, BoundaryArc, BoundaryPoint, BoundarySet, Model, ModelPoint};
use crate::group::{builtin, GroupFile, GroupSpec, Region};
use crate::measure::{Truncation, DEFAULT_LADDER, DEFAULT_TAIL_SHELL};
use crate::orbit::{EnumerationOptions, DEFAULT_T_MAX};

/// A boundary point in config files: a real number, `[re, im]`, or `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundaryValue {
    Real(f64),
    Complex([f64; 2]),
    Named(String),
}

impl BoundaryValue {
    pub fn resolve(&self) -> Result<BoundaryPoint> {
        match self {
            BoundaryValue::Real(x) => Ok(BoundaryPoint::real(*x)),
            BoundaryValue::Complex([re, im]) => Ok(BoundaryPoint::complex(*re, *im)),
            BoundaryValue::Named(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => Ok(BoundaryPoint::Infinity),
            BoundaryValue::Named(s) => Err(Error::Config(format!("boundary point `{s}`"))),
        }
    }
}

/// An arc in config files: `"full"`, `"empty"`, or visual angles at the
/// relevant basepoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArcValue {
    Named(String),
    Angles { start: f64, end: f64 },
}

impl ArcValue {
    pub fn resolve(&self, base: ModelPoint) -> Result<BoundarySet> {
        match self {
            ArcValue::Named(s) if s == "full" => Ok(BoundarySet::full(base)),
            ArcValue::Named(s) if s == "empty" => Ok(BoundarySet::empty()),
            ArcValue::Named(s) => Err(Error::Config(format!("arc `{s}`"))),
            ArcValue::Angles { start, end } => Ok(BoundarySet::from_arcs(vec![BoundaryArc::new(base, *start, *end)?])),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    GroupValidate,
    OrbitEnum,
    Delta,
    MeasurePs,
    Theorem1,
    Corollary13,
    Appendix,
    Recurrence,
    Selftest,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::GroupValidate => "group-validate",
            Experiment::OrbitEnum => "orbit-enum",
            Experiment::Delta => "delta",
            Experiment::MeasurePs => "measure-ps",
            Experiment::Theorem1 => "theorem1",
            Experiment::Corollary13 => "corollary13",
            Experiment::Appendix => "appendix",
            Experiment::Recurrence => "recurrence",
            Experiment::Selftest => "selftest",
        }
    }
}

/// Every knob of every experiment. Each experiment starts from its own
/// defaults; a JSON file overrides any subset of the keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Built-in group name or path to a group file.
    pub group: String,
    /// Basepoint coordinates; empty means `i` (or `j`).
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub xi: BoundaryValue,
    /// Empty means five points at visual angles `2πk/5` from `x`.
    pub zeta: Vec<BoundaryValue>,
    /// `Ω₁`, in visual angles at `x`.
    pub omega1: ArcValue,
    /// `Ω₂`, in visual angles at `y`.
    pub omega2: ArcValue,
    pub t_grid: Vec<f64>,
    /// Grid for the critical-exponent estimate.
    pub delta_grid: Vec<f64>,
    /// Fit window for `δ̂`; `None` is the top half of `delta_grid`.
    pub fit_range: Option<[f64; 2]>,
    pub t_max: f64,
    /// Patterson exponents as offsets above `δ̂`.
    pub s_ladder: Vec<f64>,
    /// Patterson truncation radius.
    pub radius: f64,
    pub tail_shell: Option<f64>,
    pub arcs: usize,
    pub arc_offset: f64,
    pub conformal_point: Vec<f64>,
    pub conformal_arcs: usize,
    /// Smoothing scale of indicator functions (radians).
    pub smoothing: f64,
    /// Visual separation defining the compact set of geodesics.
    pub separation: f64,
    pub geodesic: [BoundaryValue; 2],
    pub z: BoundaryValue,
    pub norm_region: Region,
    pub random_matrices: usize,
    pub seed: u64,
    /// Known exponent (e.g. 1 for a lattice in the half-plane), checked when set.
    pub expected_delta: Option<f64>,
    pub dedup_length: usize,
    pub threads: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|k| lo + k as f64 * step).collect()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            group: "gamma2".into(),
            x: Vec::new(),
            y: Vec::new(),
            xi: BoundaryValue::Real(0.0),
            zeta: Vec::new(),
            omega1: ArcValue::Angles { start: 0.3, end: 0.3 + FRAC_PI_2 },
            omega2: ArcValue::Angles { start: 2.0, end: 2.0 + FRAC_PI_2 },
            t_grid: grid(6.0, 12.0, 0.5),
            delta_grid: grid(0.5, 13.0, 0.5),
            fit_range: None,
            t_max: DEFAULT_T_MAX,
            s_ladder: DEFAULT_LADDER.to_vec(),
            radius: 12.0,
            tail_shell: Some(DEFAULT_TAIL_SHELL),
            arcs: 8,
            arc_offset: 0.1,
            conformal_point: vec![0.0, 2.0],
            conformal_arcs: 16,
            smoothing: 0.1,
            separation: 0.3,
            geodesic: [BoundaryValue::Real(0.0), BoundaryValue::Real(3.0)],
            z: BoundaryValue::Complex([0.5, 0.5]),
            norm_region: Region::Ball { center: Complex64::new(std::f64::consts::SQRT_2, 0.0), radius: 1.5 },
            random_matrices: 10_000,
            seed: 1,
            expected_delta: None,
            dedup_length: 8,
            threads: None,
            output_dir: None,
        }
    }
}

impl ExperimentConfig {
    pub fn defaults(exp: Experiment) -> Self {
        let base = ExperimentConfig::default();
        match exp {
            Experiment::Delta => ExperimentConfig { t_grid: Vec::new(), ..base },
            Experiment::Corollary13 => ExperimentConfig {
                group: "schottky_h3".into(),
                t_grid: vec![6.0],
                delta_grid: grid(1.0, 14.0, 0.5),
                ..base
            },
            Experiment::Recurrence => ExperimentConfig {
                group: "schottky_h2".into(),
                t_grid: grid(6.0, 10.0, 0.5),
                delta_grid: grid(0.5, 16.0, 0.5),
                ..base
            },
            Experiment::OrbitEnum => ExperimentConfig { t_grid: vec![6.0], ..base },
            _ => base,
        }
    }

    /// Defaults for `exp`, overridden key by key by a JSON object.
    pub fn from_json(exp: Experiment, text: &str) -> Result<Self> {
        let patch: Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))?;
        Self::defaults(exp).patched(patch)
    }

    pub fn load(exp: Experiment, path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::defaults(exp)),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
                Self::from_json(exp, &text)
            }
        }
    }

    pub fn patched(&self, patch: Value) -> Result<Self> {
        let Value::Object(patch) = patch else {
            return Err(Error::Config("config must be a JSON object".into()));
        };
        let mut current = serde_json::to_value(self)?;
        let obj = current.as_object_mut().expect("struct serializes to an object");
        for (k, v) in patch {
            obj.insert(k, v);
        }
        let cfg: Self = serde_json::from_value(current).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        for (name, g) in [("t_grid", &self.t_grid), ("delta_grid", &self.delta_grid)] {
            if g.iter().any(|t| !(t.is_finite() && *t > 0.0)) || g.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Config(format!("{name} must be positive and strictly increasing")));
            }
            if g.last().is_some_and(|&t| t > self.t_max) {
                return Err(Error::Config(format!("{name} exceeds t_max = {}", self.t_max)));
            }
        }
        if let Some([lo, hi]) = self.fit_range {
            if lo >= hi {
                return Err(Error::Config("fit_range must be increasing".into()));
            }
        }
        if self.s_ladder.iter().any(|s| *s <= 0.0) {
            return Err(Error::Config("s_ladder offsets must be positive".into()));
        }
        if !(self.radius > 0.0 && self.radius <= self.t_max) {
            return Err(Error::Config("radius must lie in (0, t_max]".into()));
        }
        if self.arcs == 0 || self.conformal_arcs == 0 {
            return Err(Error::Config("partitions need at least one arc".into()));
        }
        if !(self.smoothing >= 0.0 && self.smoothing.is_finite()) {
            return Err(Error::Config("smoothing must be non-negative".into()));
        }
        self.xi.resolve()?;
        self.z.resolve()?;
        for v in self.zeta.iter().chain(&self.geodesic) {
            v.resolve()?;
        }
        for arc in [&self.omega1, &self.omega2] {
            if let ArcValue::Named(s) = arc {
                if s != "full" && s != "empty" {
                    return Err(Error::Config(format!("arc `{s}`")));
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        let path = Path::new(&self.group);
        if self.group.ends_with(".json") || path.is_file() {
            GroupFile::read(path)
        } else {
            builtin(&self.group)
        }
    }

    /// `expected_delta`, defaulting to 1 for the built-in lattice `gamma2`.
    pub fn expected_delta(&self) -> Option<f64> {
        self.expected_delta.or_else(|| (self.group.trim() == "gamma2").then_some(1.0))
    }

    fn point(coords: &[f64], model: Model) -> Result<ModelPoint> {
        if coords.is_empty() {
            return Ok(ModelPoint::origin(model));
        }
        let p = ModelPoint::from_coords(coords)?;
        if p.model() != model {
            return Err(Error::Config(format!("point {coords:?} does not live in {model}")));
        }
        Ok(p)
    }

    pub fn x_point(&self, model: Model) -> Result<ModelPoint> {
        Self::point(&self.x, model)
    }

    pub fn y_point(&self, model: Model) -> Result<ModelPoint> {
        Self::point(&self.y, model)
    }

    pub fn conformal_point(&self, model: Model) -> Result<ModelPoint> {
        Self::point(&self.conformal_point, model)
    }

    pub fn xi_point(&self) -> Result<BoundaryPoint> {
        self.xi.resolve()
    }

    pub fn zeta_points(&self, x: &ModelPoint) -> Result<Vec<BoundaryPoint>> {
        if self.zeta.is_empty() {
            return Ok((0..5).map(|k| boundary_at_angle(x, TAU * k as f64 / 5.0)).collect());
        }
        self.zeta.iter().map(BoundaryValue::resolve).collect()
    }

    pub fn omega1(&self, x: &ModelPoint) -> Result<BoundarySet> {
        self.omega1.resolve(*x)
    }

    pub fn omega2(&self, y: &ModelPoint) -> Result<BoundarySet> {
        self.omega2.resolve(*y)
    }

    pub fn truncation(&self) -> Truncation {
        Truncation { radius: self.radius, tail_shell: self.tail_shell }
    }

    pub fn enumeration(&self) -> EnumerationOptions {
        EnumerationOptions { t_max: self.t_max, threads: self.threads, log_pruned: 0 }
    }

    pub fn fit_window(&self) -> Option<(f64, f64)> {
        self.fit_range.map(|[a, b]| (a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        for exp in [Experiment::Delta, Experiment::Theorem1, Experiment::Corollary13, Experiment::Recurrence] {
            let cfg = ExperimentConfig::defaults(exp);
            cfg.validate().unwrap();
            let text = serde_json::to_string(&cfg).unwrap();
            assert_eq!(ExperimentConfig::from_json(exp, &text).unwrap(), cfg);
        }
    }

    #[test]
    fn partial_override() {
        let cfg = ExperimentConfig::from_json(
            Experiment::Theorem1,
            r#"{"group": "schottky_h2(7)", "xi": "inf", "omega1": "full", "zeta": [0.5, [1, 2]]}"#,
        )
        .unwrap();
        assert_eq!(cfg.group, "schottky_h2(7)");
        assert!(cfg.xi_point().unwrap().is_infinite());
        let x = ModelPoint::i();
        assert!(cfg.omega1(&x).unwrap().is_full());
        assert_eq!(cfg.zeta_points(&x).unwrap().len(), 2);
        assert_eq!(cfg.t_grid, ExperimentConfig::defaults(Experiment::Theorem1).t_grid);
    }

    #[test]
    fn bad_configs() {
        let exp = Experiment::Theorem1;
        assert!(ExperimentConfig::from_json(exp, r#"{"t_grid": [3, 2]}"#).is_err());
        assert!(ExperimentConfig::from_json(exp, r#"{"t_grid": [17]}"#).is_err());
        assert!(ExperimentConfig::from_json(exp, r#"{"omega1": "half"}"#).is_err());
        assert!(ExperimentConfig::from_json(exp, r#"{"xi": "north"}"#).is_err());
        assert!(ExperimentConfig::from_json(exp, r#"{"no_such_key": 1}"#).is_err());
        assert!(ExperimentConfig::from_json(exp, "[1, 2]").is_err());
        assert!(ExperimentConfig::from_json(exp, "{").is_err());
    }

    #[test]
    fn default_zeta_list_is_spread() {
        let cfg = ExperimentConfig::default();
        let x = ModelPoint::i();
        let z = cfg.zeta_points(&x).unwrap();
        assert_eq!(z.len(), 5);
        assert!(z[0].is_infinite());
    }
}
