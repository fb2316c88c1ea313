use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{BoundaryPoint, ModelPoint};

/// A closed region of the boundary together with the convex hull above it:
/// a round disk (half-ball over it) or a half-plane (quarter-space over it).
///
/// These are the ping-pong regions that confine orbit points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Region {
    /// `|ζ - center| ≤ radius`.
    Ball { center: Complex64, radius: f64 },
    /// `Re(conj(normal)·ζ) ≥ offset` with `|normal| = 1`.
    HalfSpace { normal: Complex64, offset: f64 },
}

impl Region {
    /// Hyperbolic distance from `p` to the region (zero inside).
    ///
    /// The region is bounded by a totally geodesic hemisphere or vertical
    /// plane, for which `sinh d = (|p - c|² - r²)/(2 r h)` and
    /// `sinh d = (offset - ⟨n, p⟩)/h` respectively.
    pub fn distance_from(&self, p: &ModelPoint) -> f64 {
        let gap = self.outside_excess(p);
        if gap <= 0.0 {
            0.0
        } else {
            gap.asinh()
        }
    }

    /// `sinh` of the distance to the bounding plane, signed negative inside.
    fn outside_excess(&self, p: &ModelPoint) -> f64 {
        let h = p.height();
        match self {
            Region::Ball { center, radius } => {
                let q = (p.horizontal() - center).norm_sqr() + h * h - radius * radius;
                q / (2.0 * radius * h)
            }
            Region::HalfSpace { normal, offset } => {
                let along = (normal.conj() * p.horizontal()).re;
                (offset - along) / h
            }
        }
    }

    /// True when `p` lies strictly outside the closed region.
    pub fn excludes(&self, p: &ModelPoint) -> bool {
        self.outside_excess(p) > 0.0
    }

    pub fn contains_boundary(&self, xi: &BoundaryPoint) -> bool {
        match (self, xi) {
            (Region::Ball { .. }, BoundaryPoint::Infinity) => false,
            // a half-plane's closure on the sphere contains ∞
            (Region::HalfSpace { .. }, BoundaryPoint::Infinity) => true,
            (Region::Ball { center, radius }, BoundaryPoint::Finite(z)) => (z - center).norm() <= *radius,
            (Region::HalfSpace { normal, offset }, BoundaryPoint::Finite(z)) => {
                (normal.conj() * z).re >= *offset
            }
        }
    }

    /// Euclidean gap between two regions; negative when they overlap.
    pub fn gap(&self, other: &Region) -> f64 {
        match (self, other) {
            (Region::Ball { center: c1, radius: r1 }, Region::Ball { center: c2, radius: r2 }) => {
                (c1 - c2).norm() - r1 - r2
            }
            (Region::Ball { center, radius }, Region::HalfSpace { normal, offset })
            | (Region::HalfSpace { normal, offset }, Region::Ball { center, radius }) => {
                offset - (normal.conj() * center).re - radius
            }
            (
                Region::HalfSpace { normal: n1, offset: o1 },
                Region::HalfSpace { normal: n2, offset: o2 },
            ) => {
                // anti-parallel half-planes are separated by a strip; any other
                // pair meets (they share ∞ in any case)
                if (n1 + n2).norm() < 1e-12 {
                    o1 + o2
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    /// Horizontal position and a scale used to seed exterior-point searches.
    pub(crate) fn anchor(&self) -> (Complex64, f64) {
        match self {
            Region::Ball { center, radius } => (*center, *radius),
            Region::HalfSpace { normal, offset } => (normal * offset, 1.0),
        }
    }
}
