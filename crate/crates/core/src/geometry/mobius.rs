use num_complex::Complex64;
use std::fmt;
use std::ops::Mul;

use super::point::{BoundaryPoint, Model, ModelPoint};
use crate::error::{Error, Result};

/// Tolerance on `|det - 1|` accepted when a map is constructed from user data.
pub const DET_TOLERANCE: f64 = 1e-9;

/// A unimodular 2×2 matrix acting by linear fractional transformations,
/// identified with its negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    model: Model,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

/// Hashable key of a group element: canonical-sign entries rounded to a grid.
pub type MatrixKey = [i64; 8];

impl MoebiusMap {
    pub fn identity(model: Model) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MoebiusMap { model, a: one, b: zero, c: zero, d: one }
    }

    /// A real matrix acting on the half-plane.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = MoebiusMap {
            model: Model::H2,
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(c, 0.0),
            d: Complex64::new(d, 0.0),
        };
        m.check_det()?;
        Ok(m)
    }

    /// A complex matrix acting on the half-space.
    pub fn complex(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = MoebiusMap { model: Model::H3, a, b, c, d };
        m.check_det()?;
        Ok(m)
    }

    /// Builds a map with the given model, renormalizing the determinant.
    /// Fails only when the determinant vanishes.
    pub fn normalized(
        model: Model,
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() < 1e-300 {
            return Err(Error::Determinant(det.norm()));
        }
        let m = MoebiusMap { model, a, b, c, d };
        Ok(m.renormalized())
    }

    fn check_det(&self) -> Result<()> {
        let det = self.det();
        if (det - 1.0).norm() > DET_TOLERANCE || !det.re.is_finite() {
            return Err(Error::Determinant(det.re));
        }
        if self.model == Model::H2 && [self.a, self.b, self.c, self.d].iter().any(|e| e.im != 0.0) {
            return Err(Error::ModelMismatch("H2 maps must have real entries".into()));
        }
        Ok(())
    }

    /// Diagonal map `diag(e^{t/2}, e^{-t/2})`, translation length `t` along `(0, ∞)`.
    pub fn hyperbolic_diag(model: Model, t: f64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        MoebiusMap {
            model,
            a: Complex64::new((t / 2.0).exp(), 0.0),
            b: zero,
            c: zero,
            d: Complex64::new((-t / 2.0).exp(), 0.0),
        }
    }

    /// Horizontal translation `z ↦ z + t`.
    pub fn translation(model: Model, t: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        MoebiusMap { model, a: one, b: t, c: Complex64::new(0.0, 0.0), d: one }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }
    pub fn b(&self) -> Complex64 {
        self.b
    }
    pub fn c(&self) -> Complex64 {
        self.c
    }
    pub fn d(&self) -> Complex64 {
        self.d
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// `|a|² + |b|² + |c|² + |d|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    /// Inverse; for a unimodular matrix this is the adjugate.
    pub fn inverse(&self) -> Self {
        MoebiusMap { model: self.model, a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Divides by a square root of the determinant so that `det = 1` again.
    /// A deviation within the rounding error of `ad − bc` itself is left
    /// alone: for large entries the computed determinant is noise.
    pub fn renormalized(&self) -> Self {
        let det = self.det();
        let scale = self.a.norm() * self.d.norm() + self.b.norm() * self.c.norm();
        if (det - Complex64::new(1.0, 0.0)).norm() <= 64.0 * f64::EPSILON * scale {
            return *self;
        }
        let root = if self.model == Model::H2 && det.re > 0.0 && det.im == 0.0 {
            Complex64::new(det.re.sqrt(), 0.0)
        } else {
            det.sqrt()
        };
        if root == Complex64::new(1.0, 0.0) {
            return *self;
        }
        MoebiusMap {
            model: self.model,
            a: self.a / root,
            b: self.b / root,
            c: self.c / root,
            d: self.d / root,
        }
    }

    /// Product `self · other` (apply `other` first), renormalized.
    pub fn compose(&self, other: &MoebiusMap) -> Self {
        MoebiusMap {
            model: self.model.join(other.model),
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
        .renormalized()
    }

    /// Representative of `±g` whose first non-negligible entry has positive
    /// real part, or positive imaginary part when the real part vanishes.
    pub fn canonical(&self) -> Self {
        const EPS: f64 = 1e-12;
        for e in [self.a, self.b, self.c, self.d] {
            let negate = if e.re.abs() > EPS {
                e.re < 0.0
            } else if e.im.abs() > EPS {
                e.im < 0.0
            } else {
                continue;
            };
            return if negate { self.negated() } else { *self };
        }
        *self
    }

    fn negated(&self) -> Self {
        MoebiusMap { model: self.model, a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Canonical-sign entries rounded to multiples of `grid`.
    pub fn key(&self, grid: f64) -> MatrixKey {
        let m = self.canonical();
        let mut key = [0i64; 8];
        for (k, e) in m.entries().iter().enumerate() {
            key[2 * k] = (e.re / grid).round() as i64;
            key[2 * k + 1] = (e.im / grid).round() as i64;
        }
        key
    }

    /// Largest entrywise difference between `self` and `±other`.
    pub fn distance_up_to_sign(&self, other: &MoebiusMap) -> f64 {
        let diff = |s: f64| {
            self.entries()
                .iter()
                .zip(other.entries().iter())
                .map(|(x, y)| (x - y * s).norm())
                .fold(0.0, f64::max)
        };
        diff(1.0).min(diff(-1.0))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.distance_up_to_sign(&MoebiusMap::identity(self.model)) <= tol
    }

    /// Action on an interior point via the quaternionic formula
    /// `(z, r) ↦ (((az+b)·conj(cz+d) + a·conj(c)·r²) / D, r / D)` with
    /// `D = |cz+d|² + |c|²r²`. On the half-plane slice this is `(az+b)/(cz+d)`.
    pub fn apply(&self, p: &ModelPoint) -> ModelPoint {
        let z = p.horizontal();
        let r = p.height();
        let cz_d = self.c * z + self.d;
        let den = cz_d.norm_sqr() + self.c.norm_sqr() * r * r;
        let num = (self.a * z + self.b) * cz_d.conj() + self.a * self.c.conj() * (r * r);
        ModelPoint::from_parts(p.model().join(self.model), num / den, r / den)
    }

    /// Action on the boundary, with an explicit branch for `∞`.
    pub fn apply_boundary(&self, p: &BoundaryPoint) -> BoundaryPoint {
        let zero = Complex64::new(0.0, 0.0);
        match p {
            BoundaryPoint::Infinity => {
                if self.c == zero {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == zero {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Fixed points on the boundary (one for parabolic maps, two otherwise).
    pub fn fixed_points(&self) -> Vec<BoundaryPoint> {
        let zero = Complex64::new(0.0, 0.0);
        if self.c.norm() < 1e-14 {
            // z ↦ (a z + b)/d fixes ∞ and, unless it is a translation, one finite point.
            let mut out = vec![BoundaryPoint::Infinity];
            let diff = self.d - self.a;
            if diff.norm() > 1e-14 {
                out.push(BoundaryPoint::Finite(self.b / diff));
            }
            return out;
        }
        // c z² + (d - a) z - b = 0
        let p = self.d - self.a;
        let disc = (p * p + 4.0 * self.b * self.c).sqrt();
        let z1 = (-p + disc) / (2.0 * self.c);
        let z2 = (-p - disc) / (2.0 * self.c);
        if disc == zero || (z1 - z2).norm() < 1e-14 {
            vec![BoundaryPoint::Finite(z1)]
        } else {
            vec![BoundaryPoint::Finite(z1), BoundaryPoint::Finite(z2)]
        }
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;
    fn mul(self, rhs: MoebiusMap) -> MoebiusMap {
        self.compose(&rhs)
    }
}

impl Mul for &MoebiusMap {
    type Output = MoebiusMap;
    fn mul(self, rhs: &MoebiusMap) -> MoebiusMap {
        self.compose(rhs)
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::H2 => write!(f, "[[{}, {}], [{}, {}]]", self.a.re, self.b.re, self.c.re, self.d.re),
            Model::H3 => write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn identity_fixes_points() {
        let z = ModelPoint::h2(0.3, 0.7).unwrap();
        assert_eq!(MoebiusMap::identity(Model::H2).apply(&z), z);
    }

    #[test]
    fn unit_translation_moves_zero_to_one() {
        let m = MoebiusMap::real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(m.apply_boundary(&BoundaryPoint::real(0.0)), BoundaryPoint::real(1.0));
    }

    #[test]
    fn quarter_rotation_fixes_i() {
        let m = MoebiusMap::real(0.0, -1.0, 1.0, 0.0).unwrap();
        let p = m.apply(&ModelPoint::i());
        assert!(p.horizontal().norm() < 1e-15);
        assert!((p.height() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn infinity_maps_to_a_over_c() {
        let m = MoebiusMap::real(2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(m.apply_boundary(&BoundaryPoint::Infinity), BoundaryPoint::real(2.0));
        let t = MoebiusMap::real(1.0, 3.0, 0.0, 1.0).unwrap();
        assert_eq!(t.apply_boundary(&BoundaryPoint::Infinity), BoundaryPoint::Infinity);
        // pole maps to infinity
        assert_eq!(m.apply_boundary(&BoundaryPoint::real(-1.0)), BoundaryPoint::Infinity);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(MoebiusMap::real(2.0, 0.0, 0.0, 1.0), Err(Error::Determinant(_))));
    }

    #[test]
    fn canonical_sign_identifies_negatives() {
        let m = MoebiusMap::real(-2.0, -1.0, -1.0, -1.0).unwrap();
        let n = MoebiusMap::real(2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(m.canonical(), n);
        assert_eq!(m.key(1e-9), n.key(1e-9));
        // leading zero entry is skipped
        let s = MoebiusMap::real(0.0, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(s.canonical().b().re, 1.0);
        // purely imaginary leading entry uses the imaginary part
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        let r = MoebiusMap::complex(-i, z, z, i).unwrap();
        assert!(r.canonical().a().im > 0.0);
    }

    #[test]
    fn composition_renormalizes() {
        let m = MoebiusMap::real(2.0_f64.sqrt(), 1.0, 1.0, 2.0_f64.sqrt()).unwrap();
        let mut g = MoebiusMap::identity(Model::H2);
        for _ in 0..40 {
            g = g * m;
        }
        // at this size ad − bc only holds to the rounding of its evaluation
        let scale = g.a().norm() * g.d().norm() + g.b().norm() * g.c().norm();
        assert!((g.det() - Complex64::new(1.0, 0.0)).norm() <= 64.0 * f64::EPSILON * scale);
        assert!(g.a().im == 0.0 && g.d().im == 0.0);
        let drifted = MoebiusMap { model: Model::H2, a: m.a * 1.001, b: m.b, c: m.c, d: m.d };
        assert!(close(drifted.renormalized().det(), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn fixed_points_of_parabolic_and_hyperbolic() {
        let a = MoebiusMap::real(1.0, 2.0, 0.0, 1.0).unwrap();
        assert_eq!(a.fixed_points(), vec![BoundaryPoint::Infinity]);
        let b = MoebiusMap::real(1.0, 0.0, 2.0, 1.0).unwrap();
        assert_eq!(b.fixed_points().len(), 1);
        let h = MoebiusMap::real(2.0_f64.sqrt(), 1.0, 1.0, 2.0_f64.sqrt()).unwrap();
        let fp = h.fixed_points();
        assert_eq!(fp.len(), 2);
        for p in fp {
            let q = h.apply_boundary(&p);
            assert!(p.chordal_distance(&q) < 1e-12);
        }
    }
}
