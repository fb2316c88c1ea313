use num_complex::Complex64;

use super::mobius::MoebiusMap;
use super::point::{BoundaryPoint, Model, ModelPoint};
use crate::error::{Error, Result};

/// Oriented bi-infinite geodesic from `backward` to `forward`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    backward: BoundaryPoint,
    forward: BoundaryPoint,
}

/// Foot of a perpendicular on a geodesic and its signed arclength coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub foot: ModelPoint,
    pub s: f64,
}

impl Geodesic {
    pub fn new(backward: BoundaryPoint, forward: BoundaryPoint) -> Result<Self> {
        if backward.chordal_distance(&forward) < 1e-12 {
            return Err(Error::DegenerateGeodesic);
        }
        Ok(Geodesic { backward, forward })
    }

    pub fn backward(&self) -> BoundaryPoint {
        self.backward
    }

    pub fn forward(&self) -> BoundaryPoint {
        self.forward
    }

    pub fn transform(&self, m: &MoebiusMap) -> Result<Self> {
        Self::new(m.apply_boundary(&self.backward), m.apply_boundary(&self.forward))
    }

    /// A map sending `backward` to `0` and `forward` to `∞`.
    fn straightener(&self, model: Model) -> MoebiusMap {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let m = match (self.backward, self.forward) {
            (BoundaryPoint::Finite(xi), BoundaryPoint::Infinity) => [one, -xi, zero, one],
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(eta)) => [zero, -one, one, -eta],
            (BoundaryPoint::Finite(xi), BoundaryPoint::Finite(eta)) => {
                // z ↦ (z - ξ)/(z - η), or its negative-denominator form when
                // that keeps a real matrix at positive determinant
                if model == Model::H2 && xi.re < eta.re {
                    [one, -xi, -one, eta]
                } else {
                    [one, -xi, one, -eta]
                }
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!("checked in new"),
        };
        MoebiusMap::normalized(model, m[0], m[1], m[2], m[3]).expect("distinct endpoints")
    }

    /// Orthogonal projection onto the geodesic.
    ///
    /// `s` increases toward the forward endpoint and vanishes at the point of
    /// the geodesic closest to the model origin (`i` or `j`).
    pub fn project(&self, o: &ModelPoint) -> Projection {
        let model = if self.is_real() { o.model() } else { Model::H3 };
        let m = self.straightener(model);
        let level = |p: &ModelPoint| {
            let q = m.apply(p);
            (q.horizontal().norm_sqr() + q.height() * q.height()).sqrt()
        };
        let h = level(o);
        let h_ref = level(&ModelPoint::origin(model));
        let foot_straight = ModelPoint::from_parts(model, Complex64::new(0.0, 0.0), h);
        let foot = m.inverse().apply(&foot_straight);
        Projection { foot, s: h.ln() - h_ref.ln() }
    }

    fn is_real(&self) -> bool {
        [self.backward, self.forward]
            .iter()
            .all(|p| p.finite().is_none_or(|z| z.im == 0.0))
    }
}

/// Projection of `o` onto `g`.
pub fn project_to_geodesic(o: &ModelPoint, g: &Geodesic) -> Projection {
    g.project(o)
}

/// Signed shift along `g` between the projections of `γ⁻¹o` and `o`.
pub fn geodesic_cocycle(gamma: &MoebiusMap, g: &Geodesic, o: &ModelPoint) -> f64 {
    let moved = gamma.inverse().apply(o);
    g.project(&moved).s - g.project(o).s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::metric::dist;

    fn axis() -> Geodesic {
        Geodesic::new(BoundaryPoint::real(0.0), BoundaryPoint::Infinity).unwrap()
    }

    #[test]
    fn point_on_geodesic_is_its_own_foot() {
        let p = ModelPoint::h2(0.0, 3.0).unwrap();
        let proj = axis().project(&p);
        assert!(dist(&proj.foot, &p) < 1e-12);
        assert!((proj.s - 3.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn foot_of_one_plus_i() {
        // oracle: golden-section minimization of y ↦ d(1+i, iy)
        let o = ModelPoint::h2(1.0, 1.0).unwrap();
        let f = |y: f64| dist(&o, &ModelPoint::h2(0.0, y).unwrap());
        let (mut lo, mut hi) = (0.1_f64, 10.0_f64);
        let g = (5.0_f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let a = hi - g * (hi - lo);
            let b = lo + g * (hi - lo);
            if f(a) < f(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let foot = axis().project(&o).foot;
        assert!((foot.height() - oracle).abs() < 1e-7);
        assert!((foot.height() - 2.0_f64.sqrt()).abs() < 1e-12);
        assert!(foot.horizontal().norm() < 1e-12);
    }

    #[test]
    fn cocycle_of_identity_vanishes() {
        let id = MoebiusMap::identity(Model::H2);
        let g = Geodesic::new(BoundaryPoint::real(-2.0), BoundaryPoint::real(5.0)).unwrap();
        assert_eq!(geodesic_cocycle(&id, &g, &ModelPoint::i()), 0.0);
    }

    #[test]
    fn cocycle_of_axial_translation() {
        let gamma = MoebiusMap::hyperbolic_diag(Model::H2, 3.0);
        let c = geodesic_cocycle(&gamma, &axis(), &ModelPoint::i());
        // feet are i and e^{-3} i; their distance is the oracle
        let oracle = dist(&ModelPoint::i(), &ModelPoint::h2(0.0, (-3.0_f64).exp()).unwrap());
        assert!((c.abs() - oracle).abs() < 1e-12);
        assert!((c + 3.0).abs() < 1e-12);
    }

    #[test]
    fn reference_point_has_zero_coordinate() {
        let g = Geodesic::new(BoundaryPoint::real(1.5), BoundaryPoint::real(-0.5)).unwrap();
        let closest = g.project(&ModelPoint::i());
        assert!(closest.s.abs() < 1e-12);
        // orientation: moving the foot toward the forward endpoint increases s
        let toward = ModelPoint::h2(-0.45, 0.05).unwrap();
        assert!(g.project(&toward).s > 0.0);
    }

    #[test]
    fn degenerate_geodesic() {
        assert!(Geodesic::new(BoundaryPoint::Infinity, BoundaryPoint::Infinity).is_err());
        assert!(Geodesic::new(BoundaryPoint::real(1.0), BoundaryPoint::real(1.0)).is_err());
    }

    #[test]
    fn half_space_projection() {
        let g = Geodesic::new(BoundaryPoint::complex(1.0, 1.0), BoundaryPoint::complex(-2.0, 0.5)).unwrap();
        let o = ModelPoint::h3(0.3, -0.2, 0.7).unwrap();
        let p = g.project(&o);
        // the foot minimizes distance: nearby points of the geodesic are farther
        let m = g.straightener(Model::H3);
        let inv = m.inverse();
        let straight = m.apply(&p.foot);
        for t in [-1e-3, 1e-3] {
            let q = inv.apply(
                &ModelPoint::from_parts(Model::H3, Complex64::new(0.0, 0.0), straight.height() * f64::exp(t)),
            );
            assert!(dist(&o, &q) > dist(&o, &p.foot));
        }
    }
}
