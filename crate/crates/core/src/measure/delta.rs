use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::{GrowthPoint, GrowthTable};

/// Fewest grid points a fit may use.
pub const MIN_FIT_POINTS: usize = 4;

/// Spacing of the exponent grid scanned by the Poincaré-series bracket.
pub const BRACKET_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaMethod {
    Regression,
    PoincareBracket,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaEstimate {
    pub value: f64,
    pub stderr: f64,
    pub fit_range: (f64, f64),
    pub method: DeltaMethod,
    pub points: usize,
}

/// Both estimators on the same table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaReport {
    pub regression: DeltaEstimate,
    pub poincare: DeltaEstimate,
}

impl DeltaReport {
    /// `|regression − bracket|`.
    pub fn disagreement(&self) -> f64 {
        (self.regression.value - self.poincare.value).abs()
    }
}

/// Least-squares line through `(t, y)`: slope and its standard error.
pub fn linear_fit(t: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let n = t.len();
    if n != y.len() || n < 2 {
        return Err(Error::DegenerateFit(format!("{n} points")));
    }
    let nf = n as f64;
    let tm = t.iter().sum::<f64>() / nf;
    let ym = y.iter().sum::<f64>() / nf;
    let sxx: f64 = t.iter().map(|v| (v - tm).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide".into()));
    }
    let sxy: f64 = t.iter().zip(y).map(|(a, b)| (a - tm) * (b - ym)).sum();
    let slope = sxy / sxx;
    let stderr = if n > 2 {
        let ssr: f64 = t.iter().zip(y).map(|(a, b)| (b - ym - slope * (a - tm)).powi(2)).sum();
        (ssr / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok((slope, stderr))
}

/// Exponential growth rate of a count table: slope of `log N` against `T`
/// over `range`. Zero counts are not allowed inside the range.
pub fn growth_rate(points: &[GrowthPoint], range: (f64, f64)) -> Result<(f64, f64, usize)> {
    let window: Vec<&GrowthPoint> = points.iter().filter(|p| p.t >= range.0 && p.t <= range.1).collect();
    if window.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit(format!(
            "{} grid points in [{}, {}], need {MIN_FIT_POINTS}",
            window.len(),
            range.0,
            range.1
        )));
    }
    if let Some(p) = window.iter().find(|p| p.count <= 0.0) {
        return Err(Error::DegenerateFit(format!("zero count at T = {}", p.t)));
    }
    let t: Vec<f64> = window.iter().map(|p| p.t).collect();
    let y: Vec<f64> = window.iter().map(|p| p.count.ln()).collect();
    let (slope, stderr) = linear_fit(&t, &y)?;
    Ok((slope, stderr, window.len()))
}

fn validate(table: &GrowthTable) -> Result<()> {
    let pts = &table.points;
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::GrowthTable(format!("{} points, need {MIN_FIT_POINTS}", pts.len())));
    }
    for w in pts.windows(2) {
        if w[1].t <= w[0].t {
            return Err(Error::GrowthTable("grid is not increasing".into()));
        }
        if w[1].count < w[0].count {
            return Err(Error::GrowthTable(format!("count decreases at T = {}", w[1].t)));
        }
    }
    Ok(())
}

/// Default fit range: the upper half of the grid.
pub fn default_fit_range(table: &GrowthTable) -> (f64, f64) {
    let pts = &table.points;
    let lo = pts.len() / 2;
    let lo = lo.min(pts.len().saturating_sub(MIN_FIT_POINTS));
    (pts[lo].t, pts[pts.len() - 1].t)
}

fn positive(e: DeltaEstimate) -> Result<DeltaEstimate> {
    if e.value > 0.0 && e.value.is_finite() {
        Ok(e)
    } else {
        Err(Error::DegenerateFit(format!("non-positive exponent {}", e.value)))
    }
}

/// Slope of `log N(T)` against `T`.
pub fn regression_delta(table: &GrowthTable, range: (f64, f64)) -> Result<DeltaEstimate> {
    validate(table)?;
    let (value, stderr, points) = growth_rate(&table.points, range)?;
    positive(DeltaEstimate { value, stderr, fit_range: range, method: DeltaMethod::Regression, points })
}

/// Shell sums of the truncated Poincaré series: for the shells
/// `(t_{k-1}, t_k]` of the grid inside `range`, the midpoints and the
/// distances (or, lacking them, the count increments placed at the midpoint).
struct Shells {
    mids: Vec<f64>,
    widths: Vec<f64>,
    members: Vec<Vec<f64>>,
}

impl Shells {
    fn new(table: &GrowthTable, range: (f64, f64)) -> Self {
        let grid: Vec<&GrowthPoint> = table.points.iter().filter(|p| p.t >= range.0 && p.t <= range.1).collect();
        let mut shells = Shells { mids: Vec::new(), widths: Vec::new(), members: Vec::new() };
        for w in grid.windows(2) {
            let (lo, hi) = (w[0].t, w[1].t);
            let mid = 0.5 * (lo + hi);
            let members = if table.distances.is_empty() {
                Vec::new()
            } else {
                let a = table.distances.partition_point(|&d| d <= lo);
                let b = table.distances.partition_point(|&d| d <= hi);
                table.distances[a..b].to_vec()
            };
            shells.mids.push(mid);
            shells.widths.push(hi - lo);
            shells.members.push(members);
        }
        shells
    }

    /// `log` of the shell sums `Σ e^{-s d}` per unit width, for non-empty shells.
    fn log_sums(&self, table: &GrowthTable, range: (f64, f64), s: f64) -> (Vec<f64>, Vec<f64>) {
        let increments: Vec<f64> = if table.distances.is_empty() {
            let grid: Vec<f64> =
                table.points.iter().filter(|p| p.t >= range.0 && p.t <= range.1).map(|p| p.count).collect();
            grid.windows(2).map(|w| w[1] - w[0]).collect()
        } else {
            Vec::new()
        };
        let mut t = Vec::new();
        let mut y = Vec::new();
        #[allow(clippy::needless_range_loop)]
        for k in 0..self.mids.len() {
            let sum = if table.distances.is_empty() {
                increments[k] * (-s * self.mids[k]).exp()
            } else {
                self.members[k].iter().map(|d| (-s * d).exp()).sum()
            };
            if sum > 0.0 {
                t.push(self.mids[k]);
                y.push((sum / self.widths[k]).ln());
            }
        }
        (t, y)
    }
}

/// Abscissa of convergence of `Σ e^{-s·d}`: the exponent at which the shell
/// contributions of the truncated series switch from growing to decaying in
/// `T`, located on a grid of step `0.01` and refined by linear interpolation.
pub fn poincare_bracket(table: &GrowthTable, range: (f64, f64), s_max: f64) -> Result<DeltaEstimate> {
    validate(table)?;
    let shells = Shells::new(table, range);
    let trend = |s: f64| -> Result<(f64, f64, usize)> {
        let (t, y) = shells.log_sums(table, range, s);
        if t.len() < MIN_FIT_POINTS - 1 {
            return Err(Error::DegenerateFit(format!("{} non-empty shells in [{}, {}]", t.len(), range.0, range.1)));
        }
        let (slope, se) = linear_fit(&t, &y)?;
        Ok((slope, se, t.len() + 1))
    };
    let steps = (s_max / BRACKET_STEP).ceil() as usize;
    let (mut prev_s, (mut prev, mut prev_se, points)) = (0.0, trend(0.0)?);
    if prev <= 0.0 {
        return Err(Error::DegenerateFit("the series converges at s = 0".into()));
    }
    for k in 1..=steps {
        let s = k as f64 * BRACKET_STEP;
        let (slope, se, _) = trend(s)?;
        if slope <= 0.0 {
            let frac = prev / (prev - slope);
            let value = prev_s + frac * (s - prev_s);
            let stderr = prev_se + frac * (se - prev_se);
            return positive(DeltaEstimate {
                value,
                stderr,
                fit_range: range,
                method: DeltaMethod::PoincareBracket,
                points,
            });
        }
        (prev_s, prev, prev_se) = (s, slope, se);
    }
    Err(Error::DegenerateFit(format!("no sign change of the shell trend below s = {s_max}")))
}

/// Both estimators over the default range (upper half of the grid).
pub fn estimate_delta(table: &GrowthTable) -> Result<DeltaReport> {
    validate(table)?;
    estimate_delta_in(table, default_fit_range(table))
}

pub fn estimate_delta_in(table: &GrowthTable, range: (f64, f64)) -> Result<DeltaReport> {
    let s_max = table.model.boundary_dim() + 1.0;
    Ok(DeltaReport {
        regression: regression_delta(table, range)?,
        poincare: poincare_bracket(table, range, s_max)?,
    })
}
