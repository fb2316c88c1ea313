use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Smallest admissible height for an interior point.
pub const MIN_HEIGHT: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    /// Upper half-plane.
    H2,
    /// Upper half-space.
    H3,
}

impl Model {
    /// Dimension of the boundary sphere, `n - 1`.
    pub fn boundary_dim(self) -> f64 {
        match self {
            Model::H2 => 1.0,
            Model::H3 => 2.0,
        }
    }

    pub(crate) fn join(self, other: Model) -> Model {
        if self == Model::H3 || other == Model::H3 {
            Model::H3
        } else {
            Model::H2
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::H2 => write!(f, "H2"),
            Model::H3 => write!(f, "H3"),
        }
    }
}

/// An interior point of the upper half-plane or half-space.
///
/// Both models share one representation: a horizontal coordinate `z` and a
/// height. In the half-plane the horizontal coordinate is real, so the
/// half-plane sits inside the half-space as the vertical slice over the real
/// axis, and every formula below works unchanged for both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    model: Model,
    z: Complex64,
    height: f64,
}

impl ModelPoint {
    pub fn h2(u: f64, v: f64) -> Result<Self> {
        Self::check_height(v)?;
        Ok(ModelPoint { model: Model::H2, z: Complex64::new(u, 0.0), height: v })
    }

    pub fn h3(u: f64, w: f64, r: f64) -> Result<Self> {
        Self::check_height(r)?;
        Ok(ModelPoint { model: Model::H3, z: Complex64::new(u, w), height: r })
    }

    pub fn new(model: Model, z: Complex64, height: f64) -> Result<Self> {
        match model {
            Model::H2 => Self::h2(z.re, height),
            Model::H3 => Self::h3(z.re, z.im, height),
        }
    }

    /// The point `i` of the upper half-plane.
    pub fn i() -> Self {
        ModelPoint { model: Model::H2, z: Complex64::new(0.0, 0.0), height: 1.0 }
    }

    /// The point `j = (0, 0, 1)` of the upper half-space.
    pub fn j() -> Self {
        ModelPoint { model: Model::H3, z: Complex64::new(0.0, 0.0), height: 1.0 }
    }

    /// Reference point `o` of the model: `i` or `j`.
    pub fn origin(model: Model) -> Self {
        match model {
            Model::H2 => Self::i(),
            Model::H3 => Self::j(),
        }
    }

    fn check_height(h: f64) -> Result<()> {
        if h.is_finite() && h > MIN_HEIGHT {
            Ok(())
        } else {
            Err(Error::NonPositiveHeight(h))
        }
    }

    /// Builds a point from the output of an isometry, where the height is
    /// positive by construction.
    pub(crate) fn from_parts(model: Model, z: Complex64, height: f64) -> Self {
        let z = match model {
            Model::H2 => Complex64::new(z.re, 0.0),
            Model::H3 => z,
        };
        ModelPoint { model, z, height: height.max(f64::MIN_POSITIVE) }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Horizontal coordinate (real in the half-plane).
    pub fn horizontal(&self) -> Complex64 {
        self.z
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// The point as a complex number `u + iv`. Only meaningful in the half-plane.
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.z.re, self.height)
    }

    /// Coordinates as a flat list: `[u, v]` or `[u, w, r]`.
    pub fn coords(&self) -> Vec<f64> {
        match self.model {
            Model::H2 => vec![self.z.re, self.height],
            Model::H3 => vec![self.z.re, self.z.im, self.height],
        }
    }

    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        match coords {
            [u, v] => Self::h2(*u, *v),
            [u, w, r] => Self::h3(*u, *w, *r),
            _ => Err(Error::Config(format!(
                "a point needs 2 (H2) or 3 (H3) coordinates, got {}",
                coords.len()
            ))),
        }
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::H2 => write!(f, "({}, {})", self.z.re, self.height),
            Model::H3 => write!(f, "({}, {}, {})", self.z.re, self.z.im, self.height),
        }
    }
}

/// A point of the extended real line or the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(Complex64),
    Infinity,
}

impl BoundaryPoint {
    pub fn real(x: f64) -> Self {
        BoundaryPoint::Finite(Complex64::new(x, 0.0))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        BoundaryPoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            BoundaryPoint::Finite(z) => Some(*z),
            BoundaryPoint::Infinity => None,
        }
    }

    /// Chordal distance on the Riemann sphere; bounded by 2 and total on `∞`.
    pub fn chordal_distance(&self, other: &BoundaryPoint) -> f64 {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
            (BoundaryPoint::Finite(z), BoundaryPoint::Infinity)
            | (BoundaryPoint::Infinity, BoundaryPoint::Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (BoundaryPoint::Finite(z), BoundaryPoint::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
            }
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Infinity => write!(f, "inf"),
            BoundaryPoint::Finite(z) if z.im == 0.0 => write!(f, "{}", z.re),
            BoundaryPoint::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}
