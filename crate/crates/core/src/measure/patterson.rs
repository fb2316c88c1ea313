use serde::Serialize;
use std::f64::consts::TAU;

use super::delta::linear_fit;
use crate::error::{Error, Result};
use crate::geometry::{boundary_at_angle, visual_angle, BoundaryArc, BoundarySet, Model, ModelPoint, MoebiusMap};
use crate::group::GroupSpec;
use crate::orbit::{enumerate_ball_with, BallQuery, EnumerationOptions, OrbitRecord};

/// Smallest admissible gap between the Patterson exponent and `δ̂`.
pub const MIN_EXPONENT_GAP: f64 = 0.02;

/// Default exponent ladder, as offsets above `δ̂`.
pub const DEFAULT_LADDER: [f64; 3] = [0.10, 0.05, 0.02];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PattersonParams {
    pub s: f64,
    pub radius: f64,
}

/// Normalized mass vector on an arc partition of the boundary circle.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalBoundaryMeasure {
    pub basepoint: ModelPoint,
    pub partition: Vec<BoundaryArc>,
    pub masses: Vec<f64>,
    /// Total raw mass before normalization; `masses[k] · scale` is the raw mass.
    pub scale: f64,
    /// `None` for closed-form (visual) measures.
    pub params: Option<PattersonParams>,
}

impl EmpiricalBoundaryMeasure {
    pub fn raw_masses(&self) -> Vec<f64> {
        self.masses.iter().map(|m| m * self.scale).collect()
    }

    pub fn total_variation(&self, other: &EmpiricalBoundaryMeasure) -> Result<f64> {
        if self.masses.len() != other.masses.len() {
            return Err(Error::Partition(format!("{} arcs against {}", self.masses.len(), other.masses.len())));
        }
        Ok(0.5 * self.masses.iter().zip(&other.masses).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }

    /// Largest arcwise difference.
    pub fn max_difference(&self, other: &EmpiricalBoundaryMeasure) -> Result<f64> {
        if self.masses.len() != other.masses.len() {
            return Err(Error::Partition(format!("{} arcs against {}", self.masses.len(), other.masses.len())));
        }
        Ok(self.masses.iter().zip(&other.masses).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    /// Pushforward `g_*ν`: arcs and basepoint move by `g`, masses stay.
    pub fn transport(&self, g: &MoebiusMap) -> Result<Self> {
        Ok(EmpiricalBoundaryMeasure {
            basepoint: g.apply(&self.basepoint),
            partition: self.partition.iter().map(|a| a.transform(g)).collect::<Result<_>>()?,
            masses: self.masses.clone(),
            scale: self.scale,
            params: self.params,
        })
    }

    /// Merges consecutive groups of arcs; `sizes` must sum to the arc count.
    pub fn coarsen(&self, sizes: &[usize]) -> Result<Vec<f64>> {
        if sizes.iter().sum::<usize>() != self.masses.len() {
            return Err(Error::Partition("group sizes do not cover the partition".into()));
        }
        let mut out = Vec::with_capacity(sizes.len());
        let mut k = 0;
        for &n in sizes {
            out.push(self.masses[k..k + n].iter().sum());
            k += n;
        }
        Ok(out)
    }
}

/// Checks that the arcs tile the circle seen from `x`: same basepoint and
/// visual lengths summing to `2π`.
pub fn check_partition(x: &ModelPoint, partition: &[BoundaryArc]) -> Result<()> {
    if partition.is_empty() {
        return Err(Error::Partition("empty partition".into()));
    }
    if partition.iter().any(|a| a.basepoint() != x) {
        return Err(Error::Partition("arcs must be described from the measure's basepoint".into()));
    }
    let total: f64 = partition.iter().map(|a| a.length()).sum();
    if (total - TAU).abs() > 1e-9 {
        return Err(Error::Partition(format!("arc lengths sum to {total}, not 2π")));
    }
    Ok(())
}

/// Index of the first arc containing the visual angle, if any.
pub fn arc_index(partition: &[BoundaryArc], theta: f64) -> Option<usize> {
    partition.iter().position(|a| a.contains_angle(theta))
}

/// Closed-form normalized visual measure on the partition.
pub fn visual_reference(x: &ModelPoint, partition: &[BoundaryArc]) -> Result<EmpiricalBoundaryMeasure> {
    check_partition(x, partition)?;
    let masses = partition.iter().map(|a| a.visual_mass(x)).collect();
    Ok(EmpiricalBoundaryMeasure { basepoint: *x, partition: partition.to_vec(), masses, scale: 1.0, params: None })
}

/// Truncation of the Patterson series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    /// Orbit points with `d ≤ radius` are summed.
    pub radius: f64,
    /// Width of the outer shell used to complete the series beyond `radius`;
    /// `None` sums the truncated series only.
    pub tail_shell: Option<f64>,
}

impl Truncation {
    pub fn new(radius: f64) -> Self {
        Truncation { radius, tail_shell: Some(DEFAULT_TAIL_SHELL) }
    }

    pub fn plain(radius: f64) -> Self {
        Truncation { radius, tail_shell: None }
    }
}

/// Default width of the shell that seeds the tail completion.
pub const DEFAULT_TAIL_SHELL: f64 = 2.0;

/// Patterson sum `Σ e^{-s d(x, γ⁻¹y)}` split by the arc containing
/// `dir(x, γ⁻¹y)`. The records must have been enumerated from basepoint `x`.
/// Records without a direction (`γ⁻¹y = x`) are skipped.
///
/// With a tail shell of width `w`, the part of the series beyond `R` is
/// added arc by arc: the shell `(R−w, R]` sets the angular profile, and the
/// shell density is continued as `e^{(δ̂−s)t}`, giving
/// `tail_A = S_A · e^{(δ̂−s)w/2} / (w (s−δ̂))` for the shell sum `S_A`.
pub fn patterson_from_records(
    records: &[OrbitRecord],
    x: &ModelPoint,
    s: f64,
    delta_hat: f64,
    trunc: &Truncation,
    partition: &[BoundaryArc],
) -> Result<EmpiricalBoundaryMeasure> {
    check_partition(x, partition)?;
    check_exponent(s, delta_hat)?;
    let radius = trunc.radius;
    let raw = raw_masses(records, x, s, delta_hat, trunc, partition.len(), |t| arc_index(partition, t));
    let scale: f64 = raw.iter().sum();
    if scale <= 0.0 {
        return Err(Error::EmptyOrbit);
    }
    Ok(EmpiricalBoundaryMeasure {
        basepoint: *x,
        partition: partition.to_vec(),
        masses: raw.iter().map(|m| m / scale).collect(),
        scale,
        params: Some(PattersonParams { s, radius }),
    })
}

/// Raw completed Patterson sums of `n` classes of directions; `classify`
/// maps a visual angle at `x` to its class.
fn raw_masses(
    records: &[OrbitRecord],
    x: &ModelPoint,
    s: f64,
    delta_hat: f64,
    trunc: &Truncation,
    n: usize,
    classify: impl Fn(f64) -> Option<usize>,
) -> Vec<f64> {
    let radius = trunc.radius;
    let mut raw = vec![0.0; n];
    let mut shell = vec![0.0; n];
    let inner = trunc.tail_shell.map_or(f64::INFINITY, |w| radius - w);
    for rec in records.iter().filter(|r| r.dist <= radius) {
        let Some(dir) = rec.direction else { continue };
        if let Some(k) = classify(visual_angle(x, &dir)) {
            let w = (-s * rec.dist).exp();
            raw[k] += w;
            if rec.dist > inner {
                shell[k] += w;
            }
        }
    }
    if let Some(w) = trunc.tail_shell {
        let gap = s - delta_hat;
        let factor = (-gap * w / 2.0).exp() / (w * gap);
        raw.iter_mut().zip(&shell).for_each(|(m, sh)| *m += factor * sh);
    }
    raw
}

/// Patterson estimate of `ν_x(Ω)/|ν_x|` for a union of arcs, extrapolated
/// linearly in `s` to `δ̂` along the ladder `δ̂ + offsets`.
pub fn patterson_set_fraction(
    records: &[OrbitRecord],
    x: &ModelPoint,
    set: &BoundarySet,
    delta_hat: f64,
    trunc: &Truncation,
    offsets: &[f64],
) -> Result<f64> {
    if offsets.len() < 2 {
        return Err(Error::Config("an exponent ladder needs at least two rungs".into()));
    }
    let mut s_values = Vec::new();
    let mut fractions = Vec::new();
    for off in offsets {
        let s = delta_hat + off;
        check_exponent(s, delta_hat)?;
        let raw = raw_masses(records, x, s, delta_hat, trunc, 2, |t| {
            Some(if set.contains(&boundary_at_angle(x, t)) { 0 } else { 1 })
        });
        let total = raw[0] + raw[1];
        if total <= 0.0 {
            return Err(Error::EmptyOrbit);
        }
        s_values.push(s);
        fractions.push(raw[0] / total);
    }
    let (slope, _) = linear_fit(&s_values, &fractions)?;
    let sm = s_values.iter().sum::<f64>() / s_values.len() as f64;
    let fm = fractions.iter().sum::<f64>() / fractions.len() as f64;
    Ok((fm + slope * (delta_hat - sm)).clamp(0.0, 1.0))
}

fn check_exponent(s: f64, delta_hat: f64) -> Result<()> {
    if s < delta_hat + MIN_EXPONENT_GAP - 1e-12 {
        return Err(Error::Divergence { s, delta: delta_hat });
    }
    Ok(())
}

/// Patterson estimate of `ν_x` from the orbit of `y` truncated at radius `R`.
#[allow(clippy::too_many_arguments)]
pub fn patterson_measure(
    spec: &GroupSpec,
    x: &ModelPoint,
    y: &ModelPoint,
    s: f64,
    delta_hat: f64,
    trunc: &Truncation,
    partition: &[BoundaryArc],
    opts: &EnumerationOptions,
) -> Result<EmpiricalBoundaryMeasure> {
    if spec.model() != Model::H2 {
        return Err(Error::ModelMismatch("arc partitions need a half-plane group".into()));
    }
    check_exponent(s, delta_hat)?;
    let records = enumerate_ball_with(spec, &BallQuery::new(*x, *y, trunc.radius)?, opts)?.records;
    patterson_from_records(&records, x, s, delta_hat, trunc, partition)
}

/// Patterson estimates along an exponent ladder, with a per-arc linear
/// extrapolation to `s = δ̂`.
#[derive(Debug, Clone)]
pub struct PattersonLadder {
    pub delta_hat: f64,
    pub rungs: Vec<EmpiricalBoundaryMeasure>,
    pub extrapolated: EmpiricalBoundaryMeasure,
}

impl PattersonLadder {
    /// Largest change of any arc mass between rungs.
    pub fn max_spread(&self) -> f64 {
        let n = self.extrapolated.masses.len();
        (0..n)
            .map(|k| {
                let ms = self.rungs.iter().map(|r| r.masses[k]);
                let (lo, hi) = ms.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), m| (lo.min(m), hi.max(m)));
                hi - lo
            })
            .fold(0.0, f64::max)
    }
}

/// Ladder at `s = δ̂ + offset` for each offset, from records enumerated at `x`.
/// Extrapolated masses are clamped at zero and renormalized.
pub fn patterson_ladder(
    records: &[OrbitRecord],
    x: &ModelPoint,
    delta_hat: f64,
    trunc: &Truncation,
    partition: &[BoundaryArc],
    offsets: &[f64],
) -> Result<PattersonLadder> {
    if offsets.len() < 2 {
        return Err(Error::Config("an exponent ladder needs at least two rungs".into()));
    }
    let rungs = offsets
        .iter()
        .map(|off| {
            patterson_from_records(records, x, delta_hat + off, delta_hat, trunc, partition)
        })
        .collect::<Result<Vec<_>>>()?;
    let s_values: Vec<f64> = rungs.iter().map(|r| r.params.expect("patterson").s).collect();
    let mut masses = Vec::with_capacity(partition.len());
    for k in 0..partition.len() {
        let ms: Vec<f64> = rungs.iter().map(|r| r.masses[k]).collect();
        let (slope, _) = linear_fit(&s_values, &ms)?;
        let sm = s_values.iter().sum::<f64>() / s_values.len() as f64;
        let mm = ms.iter().sum::<f64>() / ms.len() as f64;
        masses.push((mm + slope * (delta_hat - sm)).max(0.0));
    }
    let total: f64 = masses.iter().sum();
    if total <= 0.0 {
        return Err(Error::EmptyOrbit);
    }
    masses.iter_mut().for_each(|m| *m /= total);
    let extrapolated = EmpiricalBoundaryMeasure {
        basepoint: *x,
        partition: partition.to_vec(),
        masses,
        scale: 1.0,
        params: Some(PattersonParams { s: delta_hat, radius: trunc.radius }),
    };
    Ok(PattersonLadder { delta_hat, rungs, extrapolated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::gamma2;
    use std::f64::consts::PI;

    #[test]
    fn visual_reference_basics() {
        let x = ModelPoint::i();
        let eq = BoundaryArc::equal_partition(x, 8, 0.0).unwrap();
        let v = visual_reference(&x, &eq).unwrap();
        assert!(v.masses.iter().all(|m| (m - 0.125).abs() < 1e-15));
        let full = visual_reference(&x, &[BoundaryArc::full(x)]).unwrap();
        assert_eq!(full.masses, vec![1.0]);
        // halving an arc splits its mass exactly
        let coarse = BoundaryArc::equal_partition(x, 4, 0.3).unwrap();
        let fine = BoundaryArc::equal_partition(x, 8, 0.3).unwrap();
        let c = visual_reference(&x, &coarse).unwrap();
        let f = visual_reference(&x, &fine).unwrap();
        let merged = f.coarsen(&[2, 2, 2, 2]).unwrap();
        for (a, b) in c.masses.iter().zip(&merged) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn partition_must_cover() {
        let x = ModelPoint::i();
        let half = BoundaryArc::new(x, 0.0, PI).unwrap();
        assert!(matches!(visual_reference(&x, &[half]), Err(Error::Partition(_))));
    }

    #[test]
    fn one_arc_has_all_mass() {
        let g = gamma2();
        let x = ModelPoint::i();
        let m = patterson_measure(&g, &x, &x, 1.1, 1.0, &Truncation::new(6.0), &[BoundaryArc::full(x)], &EnumerationOptions::default())
            .unwrap();
        assert_eq!(m.masses, vec![1.0]);
        assert!(m.scale > 0.0);
    }

    #[test]
    fn exponent_too_close_is_refused() {
        let g = gamma2();
        let x = ModelPoint::i();
        let r = patterson_measure(&g, &x, &x, 1.01, 1.0, &Truncation::new(6.0), &[BoundaryArc::full(x)], &EnumerationOptions::default());
        assert!(matches!(r, Err(Error::Divergence { .. })));
    }

    #[test]
    fn masses_form_a_probability_vector() {
        let g = gamma2();
        let x = ModelPoint::i();
        let part = BoundaryArc::equal_partition(x, 16, 0.1).unwrap();
        let recs = enumerate_ball_with(&g, &BallQuery::new(x, x, 8.0).unwrap(), &EnumerationOptions::default())
            .unwrap()
            .records;
        let ladder = patterson_ladder(&recs, &x, 1.0, &Truncation::plain(8.0), &part, &DEFAULT_LADDER).unwrap();
        for m in ladder.rungs.iter().chain([&ladder.extrapolated]) {
            assert!((m.masses.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!(m.masses.iter().all(|&v| v >= 0.0));
        }
        // oracle: the raw mass equals the direct sum over records
        let s = ladder.rungs[0].params.unwrap().s;
        let direct: f64 = recs.iter().filter(|r| r.direction.is_some()).map(|r| (-s * r.dist).exp()).sum();
        assert!((ladder.rungs[0].scale - direct).abs() < 1e-9 * direct);
    }
}
