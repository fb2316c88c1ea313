use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{dist, geodesic_cocycle, visual_angle, BoundaryPoint, Geodesic, ModelPoint};
use crate::measure::{linear_fit, MIN_FIT_POINTS};
use crate::orbit::OrbitRecord;

/// Angular distance in `[0, π]` between the directions of two boundary
/// points seen from `o`.
pub fn visual_separation(o: &ModelPoint, a: &BoundaryPoint, b: &BoundaryPoint) -> f64 {
    let d = (visual_angle(o, a) - visual_angle(o, b)).abs() % (2.0 * PI);
    d.min(2.0 * PI - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecurrenceRow {
    pub t: f64,
    /// `#{γ : d(γx, y) ≤ T, (γξ, γη) ∈ K}`.
    pub restricted: u64,
    /// `#{γ : d(γx, y) ≤ T}`.
    pub unrestricted: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceCounts {
    pub rows: Vec<RecurrenceRow>,
    /// Counted elements checked against `|c(γ,(ξ,η))| ≤ d(o, γo)`.
    pub cocycle_checked: u64,
    pub cocycle_violations: u64,
    /// Largest `|c| − d(o, γo)` over counted elements.
    pub cocycle_worst: f64,
}

/// Counts on a radius grid, with `K` the pairs whose visual separation at
/// `o` is at least `epsilon`. Records come from a query with basepoints
/// `x, y`, so `d(x, γ⁻¹y) = d(γx, y)` for `γ = record.gamma`. For
/// `epsilon > π` the set `K` is empty and every restricted count is zero.
pub fn recurrence_counts(
    records: &[OrbitRecord],
    geodesic: &Geodesic,
    o: &ModelPoint,
    epsilon: f64,
    grid: &[f64],
) -> RecurrenceCounts {
    let mut hits: Vec<f64> = Vec::new();
    let mut out = RecurrenceCounts { rows: Vec::new(), cocycle_checked: 0, cocycle_violations: 0, cocycle_worst: f64::NEG_INFINITY };
    for rec in records {
        let a = rec.gamma.apply_boundary(&geodesic.backward());
        let b = rec.gamma.apply_boundary(&geodesic.forward());
        if visual_separation(o, &a, &b) < epsilon {
            continue;
        }
        hits.push(rec.dist);
        let c = geodesic_cocycle(&rec.gamma, geodesic, o).abs();
        let excess = c - dist(o, &rec.gamma.apply(o));
        out.cocycle_checked += 1;
        out.cocycle_worst = out.cocycle_worst.max(excess);
        if excess > 1e-9 {
            out.cocycle_violations += 1;
        }
    }
    hits.sort_by(f64::total_cmp);
    let mut all: Vec<f64> = records.iter().map(|r| r.dist).collect();
    all.sort_by(f64::total_cmp);
    out.rows = grid
        .iter()
        .map(|&t| RecurrenceRow {
            t,
            restricted: hits.partition_point(|&d| d <= t) as u64,
            unrestricted: all.partition_point(|&d| d <= t) as u64,
        })
        .collect();
    out
}

/// Exponential rate of a count sequence: slope of `log count` against `T`
/// over the positive entries. An identically zero sequence has rate 0.
pub fn count_rate(t: &[f64], counts: &[u64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = t.iter().zip(counts).filter(|(_, &c)| c > 0).map(|(&t, &c)| (t, (c as f64).ln())).collect();
    if pts.is_empty() {
        return Ok(0.0);
    }
    if pts.len() < 2 {
        return Err(Error::DegenerateFit("a single positive count".into()));
    }
    let (ts, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    Ok(linear_fit(&ts, &ys)?.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceResult {
    pub counts: RecurrenceCounts,
    pub restricted_rate: f64,
    pub unrestricted_rate: f64,
}

/// Counts and fitted exponential rates. Refuses `epsilon > π` (empty `K`).
pub fn recurrence_test(
    records: &[OrbitRecord],
    geodesic: &Geodesic,
    o: &ModelPoint,
    epsilon: f64,
    grid: &[f64],
) -> Result<RecurrenceResult> {
    if epsilon > PI {
        return Err(Error::EmptyCompactSet(epsilon));
    }
    if grid.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit(format!("{} grid points, need {MIN_FIT_POINTS}", grid.len())));
    }
    let counts = recurrence_counts(records, geodesic, o, epsilon, grid);
    let restricted: Vec<u64> = counts.rows.iter().map(|r| r.restricted).collect();
    let unrestricted: Vec<u64> = counts.rows.iter().map(|r| r.unrestricted).collect();
    Ok(RecurrenceResult {
        restricted_rate: count_rate(grid, &restricted)?,
        unrestricted_rate: count_rate(grid, &unrestricted)?,
        counts,
    })
}
