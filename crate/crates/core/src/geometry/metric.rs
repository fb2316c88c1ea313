//! Distances, Busemann functions and visual directions.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::mobius::MoebiusMap;
use super::point::{BoundaryPoint, Model, ModelPoint};
use crate::error::{Error, Result};

const TAU: f64 = 2.0 * PI;

/// Hyperbolic distance.
///
/// Uses `cosh d = 1 + |p - q|² / (2 h_p h_q)` (Euclidean distance in the
/// half-space), evaluated as `2 asinh(|p - q| / (2 sqrt(h_p h_q)))` so that
/// nearby points keep full relative precision.
pub fn dist(p: &ModelPoint, q: &ModelPoint) -> f64 {
    let dz = p.horizontal() - q.horizontal();
    let dh = p.height() - q.height();
    let euclid = (dz.norm_sqr() + dh * dh).sqrt();
    2.0 * (euclid / (2.0 * (p.height() * q.height()).sqrt())).asinh()
}

/// `d(g·j, j)` read off the matrix entries: `arccosh((|a|²+|b|²+|c|²+|d|²)/2)`.
///
/// Evaluated through `|a|²+|b|²+|c|²+|d|² - 2 = |a - conj d|² + |b + conj c|²`,
/// which holds whenever `ad - bc = 1` and avoids cancellation near the identity.
pub fn dist_via_norm(m: &MoebiusMap) -> f64 {
    let [a, b, c, d] = m.entries();
    let excess = (a - d.conj()).norm_sqr() + (b + c.conj()).norm_sqr();
    2.0 * (excess.sqrt() / 2.0).asinh()
}

/// Busemann function `β_ξ(x, y) = lim d(x, ξ_t) - d(y, ξ_t)`.
///
/// Closed form: for `ξ = ∞` it is `log(h_y / h_x)`; otherwise conjugate `ξ`
/// to `∞` with `z ↦ -1/(z - ξ)`, which sends a point of height `h` to height
/// `h / (|z - ξ|² + h²)`.
pub fn busemann(xi: &BoundaryPoint, x: &ModelPoint, y: &ModelPoint) -> f64 {
    match xi {
        BoundaryPoint::Infinity => (y.height() / x.height()).ln(),
        BoundaryPoint::Finite(c) => {
            let lifted = |p: &ModelPoint| {
                let q = (p.horizontal() - c).norm_sqr() + p.height() * p.height();
                p.height() / q
            };
            (lifted(y) / lifted(x)).ln()
        }
    }
}

/// Unit vector at `x` pointing along the geodesic ray toward `p`, in the ball
/// model centered at `x`.
///
/// The ball model is reached by normalizing `x` to `j` and applying the
/// inversion `X ↦ -e₃ + 2(X + e₃)/|X + e₃|²`, which fixes the unit sphere of
/// directions and sends `j` to the origin.
pub fn visual_direction(x: &ModelPoint, p: &ModelPoint) -> Result<[f64; 3]> {
    let h = x.height();
    let z = (p.horizontal() - x.horizontal()) / h;
    let r = p.height() / h;
    let ball = invert([z.re, z.im, r]);
    let n = norm3(ball);
    if n == 0.0 || dist(x, p) == 0.0 {
        return Err(Error::UndefinedDirection);
    }
    Ok([ball[0] / n, ball[1] / n, ball[2] / n])
}

/// Unit vector at `x` pointing toward a boundary point.
pub fn visual_direction_boundary(x: &ModelPoint, xi: &BoundaryPoint) -> [f64; 3] {
    match xi {
        BoundaryPoint::Infinity => [0.0, 0.0, -1.0],
        BoundaryPoint::Finite(w) => {
            let z = (w - x.horizontal()) / x.height();
            invert([z.re, z.im, 0.0])
        }
    }
}

/// The boundary point seen from `x` in direction `dir` (a unit vector).
pub fn boundary_from_direction(x: &ModelPoint, dir: [f64; 3]) -> BoundaryPoint {
    let denom = 1.0 + dir[2];
    if denom <= 0.0 {
        return BoundaryPoint::Infinity;
    }
    let z = Complex64::new(dir[0] / denom, dir[1] / denom);
    let z = x.horizontal() + z * x.height();
    match x.model() {
        Model::H2 => BoundaryPoint::Finite(Complex64::new(z.re, 0.0)),
        Model::H3 => BoundaryPoint::Finite(z),
    }
}

fn invert(p: [f64; 3]) -> [f64; 3] {
    let shifted = [p[0], p[1], p[2] + 1.0];
    let s = shifted[0] * shifted[0] + shifted[1] * shifted[1] + shifted[2] * shifted[2];
    [2.0 * shifted[0] / s, 2.0 * shifted[1] / s, 2.0 * shifted[2] / s - 1.0]
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Forward endpoint of the geodesic ray from `x` through `p`.
pub fn dir(x: &ModelPoint, p: &ModelPoint) -> Result<BoundaryPoint> {
    if x.model() == Model::H2 && p.model() == Model::H2 {
        let theta = visual_angle_of_point(x, p)?;
        Ok(boundary_at_angle(x, theta))
    } else {
        let d = visual_direction(x, p)?;
        Ok(boundary_from_direction(x, d))
    }
}

/// Visual angle at `x` (half-plane) of a boundary point, in `[0, 2π)`.
///
/// Angles come from the disk model centered at `x`: after normalizing `x` to
/// `i`, a boundary point `t` sits at `arg((t - i)/(t + i))`. The angle is `0`
/// at `∞` and increases with the real coordinate, so counterclockwise arcs
/// run left to right along the real line.
pub fn visual_angle(x: &ModelPoint, omega: &BoundaryPoint) -> f64 {
    match omega {
        BoundaryPoint::Infinity => 0.0,
        BoundaryPoint::Finite(w) => {
            let t = (w.re - x.horizontal().re) / x.height();
            // arg((t - i)/(t + i)) = 2·atan2(1, -t) for real t
            let theta = 2.0 * 1.0_f64.atan2(-t);
            wrap_angle(theta)
        }
    }
}

/// Visual angle at `x` of the ray toward an interior point `p`.
pub fn visual_angle_of_point(x: &ModelPoint, p: &ModelPoint) -> Result<f64> {
    let h = x.height();
    let w = Complex64::new((p.horizontal().re - x.horizontal().re) / h, p.height() / h);
    let i = Complex64::new(0.0, 1.0);
    let q = (w - i) / (w + i);
    if q.norm() == 0.0 || dist(x, p) == 0.0 {
        return Err(Error::UndefinedDirection);
    }
    Ok(wrap_angle(q.arg()))
}

/// Boundary point at visual angle `theta` from `x` (half-plane).
pub fn boundary_at_angle(x: &ModelPoint, theta: f64) -> BoundaryPoint {
    let theta = wrap_angle(theta);
    let half = theta / 2.0;
    let s = half.sin();
    if theta == 0.0 || s == 0.0 {
        return BoundaryPoint::Infinity;
    }
    let t = -half.cos() / s;
    BoundaryPoint::real(x.horizontal().re + x.height() * t)
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Polar and azimuthal angles of a unit direction vector.
pub fn direction_angles(v: [f64; 3]) -> (f64, f64) {
    let polar = v[2].clamp(-1.0, 1.0).acos();
    let azimuth = wrap_angle(v[1].atan2(v[0]));
    (polar, azimuth)
}
