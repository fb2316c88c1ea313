//! Arcs of the boundary circle of the half-plane, parametrized by visual angle.

use std::f64::consts::PI;

use super::metric::{boundary_at_angle, visual_angle, wrap_angle};
use super::mobius::MoebiusMap;
use super::point::{BoundaryPoint, Model, ModelPoint};
use crate::error::{Error, Result};

const TAU: f64 = 2.0 * PI;

/// Counterclockwise arc of visual angles `[start, start + length]` at a basepoint.
/// Endpoints belong to the arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArc {
    basepoint: ModelPoint,
    start: f64,
    end: f64,
    full: bool,
}

impl BoundaryArc {
    pub fn new(basepoint: ModelPoint, start: f64, end: f64) -> Result<Self> {
        if basepoint.model() != Model::H2 {
            return Err(Error::ModelMismatch("boundary arcs live on the half-plane boundary".into()));
        }
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::DegenerateArc("non-finite angle".into()));
        }
        let (start, end) = (wrap_angle(start), wrap_angle(end));
        if start == end {
            return Err(Error::DegenerateArc(
                "start equals end; use BoundaryArc::full for the whole circle".into(),
            ));
        }
        Ok(BoundaryArc { basepoint, start, end, full: false })
    }

    pub fn full(basepoint: ModelPoint) -> Self {
        BoundaryArc { basepoint, start: 0.0, end: 0.0, full: true }
    }

    /// The counterclockwise arc from boundary point `from` to boundary point `to`.
    pub fn from_points(basepoint: ModelPoint, from: &BoundaryPoint, to: &BoundaryPoint) -> Result<Self> {
        Self::new(basepoint, visual_angle(&basepoint, from), visual_angle(&basepoint, to))
    }

    /// `n` arcs of equal visual angle starting at `offset`.
    pub fn equal_partition(basepoint: ModelPoint, n: usize, offset: f64) -> Result<Vec<Self>> {
        if n == 0 {
            return Err(Error::DegenerateArc("a partition needs at least one arc".into()));
        }
        if n == 1 {
            return Ok(vec![Self::full(basepoint)]);
        }
        let step = TAU / n as f64;
        (0..n)
            .map(|k| Self::new(basepoint, offset + k as f64 * step, offset + (k + 1) as f64 * step))
            .collect()
    }

    pub fn basepoint(&self) -> &ModelPoint {
        &self.basepoint
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Visual angle subtended at the basepoint, in `(0, 2π]`.
    pub fn length(&self) -> f64 {
        if self.full {
            TAU
        } else {
            (self.end - self.start).rem_euclid(TAU)
        }
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        self.full || (theta - self.start).rem_euclid(TAU) <= self.length()
    }

    pub fn contains(&self, p: &BoundaryPoint) -> bool {
        self.full || self.contains_angle(visual_angle(&self.basepoint, p))
    }

    /// Signed angular distance from `theta` to the arc boundary: positive inside.
    pub fn signed_depth(&self, theta: f64) -> f64 {
        if self.full {
            return f64::INFINITY;
        }
        let offset = (theta - self.start).rem_euclid(TAU);
        let len = self.length();
        if offset <= len {
            offset.min(len - offset)
        } else {
            -(offset - len).min(TAU - offset)
        }
    }

    pub fn start_point(&self) -> BoundaryPoint {
        boundary_at_angle(&self.basepoint, self.start)
    }

    pub fn end_point(&self) -> BoundaryPoint {
        boundary_at_angle(&self.basepoint, self.end)
    }

    /// Boundary point at the middle visual angle.
    pub fn midpoint(&self) -> BoundaryPoint {
        boundary_at_angle(&self.basepoint, self.start + self.length() / 2.0)
    }

    /// Normalized visual measure of the arc as seen from `x`.
    ///
    /// The endpoints are converted to boundary points and re-measured at `x`;
    /// orientation-preserving changes of viewpoint keep the cyclic order.
    pub fn visual_mass(&self, x: &ModelPoint) -> f64 {
        if self.full {
            return 1.0;
        }
        if *x == self.basepoint {
            return self.length() / TAU;
        }
        match self.rebased(*x) {
            Ok(arc) => arc.length() / TAU,
            // endpoints collapse to one angle only through round-off on tiny arcs
            Err(_) => 0.0,
        }
    }

    /// The same set of boundary points described from another basepoint.
    pub fn rebased(&self, basepoint: ModelPoint) -> Result<Self> {
        if self.full {
            return Ok(Self::full(basepoint));
        }
        Self::from_points(basepoint, &self.start_point(), &self.end_point())
    }

    /// Image of the arc under an orientation-preserving isometry.
    pub fn transform(&self, m: &MoebiusMap) -> Result<Self> {
        let basepoint = m.apply(&self.basepoint);
        if self.full {
            return Ok(Self::full(basepoint));
        }
        Self::from_points(
            basepoint,
            &m.apply_boundary(&self.start_point()),
            &m.apply_boundary(&self.end_point()),
        )
    }
}

/// Finite union of boundary arcs; the sets Ω, Ω₁, Ω₂ of the counting problems.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySet {
    arcs: Vec<BoundaryArc>,
}

impl BoundarySet {
    pub fn empty() -> Self {
        BoundarySet { arcs: Vec::new() }
    }

    pub fn full(basepoint: ModelPoint) -> Self {
        BoundarySet { arcs: vec![BoundaryArc::full(basepoint)] }
    }

    pub fn from_arcs(arcs: Vec<BoundaryArc>) -> Self {
        BoundarySet { arcs }
    }

    pub fn arcs(&self) -> &[BoundaryArc] {
        &self.arcs
    }

    pub fn is_full(&self) -> bool {
        self.arcs.iter().any(BoundaryArc::is_full)
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, p: &BoundaryPoint) -> bool {
        self.arcs.iter().any(|a| a.contains(p))
    }

    /// Normalized visual measure of the union seen from `x`; overlaps count once.
    pub fn visual_mass(&self, x: &ModelPoint) -> f64 {
        if self.is_full() {
            return 1.0;
        }
        let mut intervals = Vec::new();
        for arc in &self.arcs {
            let Ok(a) = arc.rebased(*x) else { continue };
            let (s, len) = (a.start(), a.length());
            if s + len <= TAU {
                intervals.push((s, s + len));
            } else {
                intervals.push((s, TAU));
                intervals.push((0.0, s + len - TAU));
            }
        }
        intervals.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut total = 0.0;
        let mut current: Option<(f64, f64)> = None;
        for (s, e) in intervals {
            match current {
                Some((cs, ce)) if s <= ce => current = Some((cs, ce.max(e))),
                Some((cs, ce)) => {
                    total += ce - cs;
                    current = Some((s, e));
                }
                None => current = Some((s, e)),
            }
        }
        if let Some((cs, ce)) = current {
            total += ce - cs;
        }
        (total / TAU).min(1.0)
    }
}
