use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{BoundarySet, ModelPoint};
use crate::orbit::OrbitRecord;

/// The four sector counts at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SectorCounts {
    /// `N_T(Ω₁, Ω₂)`.
    pub both: u64,
    /// `N_T(Ω₁, ∂)`.
    pub first: u64,
    /// `N_T(∂, Ω₂)`.
    pub second: u64,
    /// `N_T(∂, ∂)`.
    pub all: u64,
}

impl SectorCounts {
    /// `N(Ω₁,Ω₂)·N(∂,∂) / (N(Ω₁,∂)·N(∂,Ω₂))`; undefined on a zero denominator.
    pub fn factorization_ratio(&self) -> Option<f64> {
        let den = self.first as f64 * self.second as f64;
        (den > 0.0).then(|| self.both as f64 * self.all as f64 / den)
    }

    pub fn first_fraction(&self) -> Option<f64> {
        (self.all > 0).then(|| self.first as f64 / self.all as f64)
    }

    pub fn second_fraction(&self) -> Option<f64> {
        (self.all > 0).then(|| self.second as f64 / self.all as f64)
    }

    /// `N(Ω₁,Ω₂) ≤ min(N(Ω₁,∂), N(∂,Ω₂))` and both `≤ N(∂,∂)`.
    pub fn dominated(&self) -> bool {
        self.both <= self.first.min(self.second) && self.first.max(self.second) <= self.all
    }
}

fn in_first(rec: &OrbitRecord, omega1: &BoundarySet) -> bool {
    match &rec.direction {
        Some(d) => omega1.contains(d),
        None => omega1.is_full(),
    }
}

/// Counts over `records` with `dist ≤ t`. The direction of `γ⁻¹y` lies in
/// `Ω₁` and `γ(ξ)` in `Ω₂`; a record without a direction (`γ⁻¹y = x`)
/// belongs to `Ω₁` only when `Ω₁` is the full circle.
pub fn sector_count(records: &[OrbitRecord], omega1: &BoundarySet, omega2: &BoundarySet, t: f64) -> Result<SectorCounts> {
    let mut c = SectorCounts { both: 0, first: 0, second: 0, all: 0 };
    for rec in records.iter().filter(|r| r.dist <= t) {
        let image = rec.xi_image.ok_or(Error::MissingXiImage)?;
        let a = in_first(rec, omega1);
        let b = omega2.contains(&image);
        c.all += 1;
        c.first += a as u64;
        c.second += b as u64;
        c.both += (a && b) as u64;
    }
    Ok(c)
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorRow {
    pub t: f64,
    pub counts: SectorCounts,
    pub ratio: Option<f64>,
    pub first_fraction: Option<f64>,
    pub second_fraction: Option<f64>,
}

/// Sector counts on a radius grid with factorization ratios and fractions.
#[derive(Debug, Clone, Serialize)]
pub struct SectorCountResult {
    pub rows: Vec<SectorRow>,
    /// Limits the fractions are compared with: `ν̂_x(Ω₁)` and `ν̂_y(Ω₂)`.
    pub first_target: f64,
    pub second_target: f64,
}

impl SectorCountResult {
    pub fn from_records(
        records: &[OrbitRecord],
        omega1: &BoundarySet,
        omega2: &BoundarySet,
        grid: &[f64],
        first_target: f64,
        second_target: f64,
    ) -> Result<Self> {
        let rows = grid
            .iter()
            .map(|&t| {
                let counts = sector_count(records, omega1, omega2, t)?;
                Ok(SectorRow {
                    t,
                    counts,
                    ratio: counts.factorization_ratio(),
                    first_fraction: counts.first_fraction(),
                    second_fraction: counts.second_fraction(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SectorCountResult { rows, first_target, second_target })
    }

    /// Domination chain at every radius and every count nondecreasing in `T`.
    pub fn invariants_hold(&self) -> bool {
        let chain = self.rows.iter().all(|r| r.counts.dominated());
        let monotone = self.rows.windows(2).all(|w| {
            let (a, b) = (w[0].counts, w[1].counts);
            a.both <= b.both && a.first <= b.first && a.second <= b.second && a.all <= b.all
        });
        chain && monotone
    }

    pub fn last(&self) -> Option<&SectorRow> {
        self.rows.last()
    }

    /// Whether `|R(T) − 1|` does not increase over the last three rows.
    pub fn ratio_trend_toward_one(&self) -> Option<bool> {
        let tail: Vec<f64> = self.rows.iter().rev().take(3).map(|r| r.ratio).collect::<Option<Vec<_>>>()?;
        if tail.len() < 3 {
            return None;
        }
        // tail is newest first
        Some((tail[0] - 1.0).abs() <= (tail[1] - 1.0).abs() && (tail[1] - 1.0).abs() <= (tail[2] - 1.0).abs())
    }

    pub fn to_csv(&self) -> String {
        use crate::fmt::sig12;
        let opt = |v: Option<f64>| v.map(sig12).unwrap_or_default();
        let mut out = String::from("t,n_both,n_first,n_second,n_all,ratio,first_fraction,second_fraction\n");
        for r in &self.rows {
            out += &format!(
                "{},{},{},{},{},{},{},{}\n",
                sig12(r.t),
                r.counts.both,
                r.counts.first,
                r.counts.second,
                r.counts.all,
                opt(r.ratio),
                opt(r.first_fraction),
                opt(r.second_fraction)
            );
        }
        out
    }
}

/// Visual mass of `omega` from `x` (the Patterson class of a lattice).
pub fn visual_target(x: &ModelPoint, omega: &BoundarySet) -> f64 {
    omega.visual_mass(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoundaryArc, BoundaryPoint};
    use crate::group::gamma2;
    use crate::orbit::{enumerate_ball, BallQuery};
    use std::f64::consts::PI;

    fn records(t: f64) -> Vec<OrbitRecord> {
        let x = ModelPoint::i();
        enumerate_ball(&gamma2(), &BallQuery::new(x, x, t).unwrap().with_xi(BoundaryPoint::real(0.0))).unwrap()
    }

    #[test]
    fn full_and_empty() {
        let recs = records(6.0);
        let x = ModelPoint::i();
        let full = BoundarySet::full(x);
        let c = sector_count(&recs, &full, &full, 6.0).unwrap();
        assert_eq!(c.all as usize, recs.len());
        assert_eq!(c.both, c.all);
        assert_eq!(c.factorization_ratio(), Some(1.0));
        let c = sector_count(&recs, &full, &BoundarySet::empty(), 6.0).unwrap();
        assert_eq!(c.both, 0);
        assert_eq!(c.second, 0);
    }

    #[test]
    fn complementary_arcs_add_up() {
        let recs = records(7.0);
        let x = ModelPoint::i();
        let a = BoundarySet::from_arcs(vec![BoundaryArc::new(x, 0.3, 0.3 + PI).unwrap()]);
        let b = BoundarySet::from_arcs(vec![BoundaryArc::new(x, 0.3 + PI, 0.3).unwrap()]);
        let full = BoundarySet::full(x);
        let ca = sector_count(&recs, &a, &full, 7.0).unwrap();
        let cb = sector_count(&recs, &b, &full, 7.0).unwrap();
        // identity has no direction and counts only for the full circle
        assert_eq!(ca.first + cb.first + 1, ca.all);
    }

    #[test]
    fn ratio_is_one_when_a_set_is_full() {
        let recs = records(8.0);
        let x = ModelPoint::i();
        let q = BoundarySet::from_arcs(vec![BoundaryArc::new(x, 1.0, 2.5).unwrap()]);
        let res = SectorCountResult::from_records(&recs, &BoundarySet::full(x), &q, &[4.0, 6.0, 8.0], 1.0, 0.2)
            .unwrap();
        for row in &res.rows {
            assert_eq!(row.ratio, Some(1.0));
        }
        assert!(res.invariants_hold());
        assert!(res.to_csv().starts_with("t,n_both"));
    }

    #[test]
    fn missing_xi_is_an_error() {
        let x = ModelPoint::i();
        let recs = enumerate_ball(&gamma2(), &BallQuery::new(x, x, 3.0).unwrap()).unwrap();
        let full = BoundarySet::full(x);
        assert!(matches!(sector_count(&recs, &full, &full, 3.0), Err(Error::MissingXiImage)));
    }
}
