use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{visual_angle, visual_angle_of_point, BoundaryArc, BoundaryPoint, ModelPoint};
use crate::measure::EmpiricalBoundaryMeasure;
use crate::orbit::OrbitRecord;

/// A function of one boundary variable built from an arc: the constant 1,
/// or the indicator of the arc ramped linearly over angular width `ε`
/// around each endpoint (`ε = 0` gives the sharp indicator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArcFunction {
    One,
    Indicator { arc: BoundaryArc, epsilon: f64 },
}

impl ArcFunction {
    pub fn indicator(arc: BoundaryArc, epsilon: f64) -> Self {
        ArcFunction::Indicator { arc, epsilon }
    }

    /// Value at visual angle `theta` seen from the arc's basepoint.
    pub fn at_angle(&self, theta: f64) -> f64 {
        match self {
            ArcFunction::One => 1.0,
            ArcFunction::Indicator { arc, epsilon } => {
                let depth = arc.signed_depth(theta);
                if *epsilon == 0.0 {
                    if arc.contains_angle(theta) {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    (0.5 + depth / epsilon).clamp(0.0, 1.0)
                }
            }
        }
    }

    pub fn at_boundary(&self, p: &BoundaryPoint) -> f64 {
        match self {
            ArcFunction::One => 1.0,
            ArcFunction::Indicator { arc, .. } => self.at_angle(visual_angle(arc.basepoint(), p)),
        }
    }

    /// Value at an interior point through its direction from the basepoint;
    /// at the basepoint itself, the visual mean.
    pub fn at_point(&self, p: &ModelPoint) -> f64 {
        match self {
            ArcFunction::One => 1.0,
            ArcFunction::Indicator { arc, .. } => match visual_angle_of_point(arc.basepoint(), p) {
                Ok(theta) => self.at_angle(theta),
                Err(_) => self.visual_mean(),
            },
        }
    }

    /// Mean against the visual measure at the basepoint.
    pub fn visual_mean(&self) -> f64 {
        match self {
            ArcFunction::One => 1.0,
            // the ramp is symmetric about each endpoint
            ArcFunction::Indicator { arc, .. } => arc.length() / TAU,
        }
    }

    /// Midpoint-rule integral against a normalized partition measure.
    pub fn integrate(&self, nu: &EmpiricalBoundaryMeasure) -> f64 {
        if let ArcFunction::One = self {
            return 1.0;
        }
        nu.partition.iter().zip(&nu.masses).map(|(a, m)| m * self.at_boundary(&a.midpoint())).sum()
    }
}

/// The test functions `f(ξ, η)` on boundary × closure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    Const(f64),
    First(ArcFunction),
    Second(ArcFunction),
    Product(ArcFunction, ArcFunction),
}

impl TestFunction {
    fn parts(&self) -> (f64, ArcFunction, ArcFunction) {
        match *self {
            TestFunction::Const(c) => (c, ArcFunction::One, ArcFunction::One),
            TestFunction::First(g) => (1.0, g, ArcFunction::One),
            TestFunction::Second(h) => (1.0, ArcFunction::One, h),
            TestFunction::Product(g, h) => (1.0, g, h),
        }
    }

    /// `∫∫ f dν̂_x dν̂_y` for normalized partition measures.
    pub fn target(&self, nu_x: &EmpiricalBoundaryMeasure, nu_y: &EmpiricalBoundaryMeasure) -> f64 {
        let (c, g, h) = self.parts();
        c * g.integrate(nu_x) * h.integrate(nu_y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitalAverage {
    pub t: f64,
    pub count: u64,
    /// `F(ζ, x, T) = (1/N_T) Σ f(γζ, γ⁻¹x)`.
    pub value: f64,
    /// `(1/N_T) Σ g(γζ)` and `(1/N_T) Σ h(γ⁻¹x)` for `f = c·g⊗h`.
    pub first_part: f64,
    pub second_part: f64,
}

impl OrbitalAverage {
    /// `|F − c·(Σg)(Σh)/N²|`, the finite-T defect of factorization.
    pub fn factorization_gap(&self, f: &TestFunction) -> f64 {
        (self.value - f.parts().0 * self.first_part * self.second_part).abs()
    }
}

/// `F(ζ, x, T)` on a radius grid. The records come from a query with
/// basepoints `x, y`, so `N_T` counts `d(x, γy) ≤ T` in the summation
/// variable `γ = record.gamma⁻¹`; the arguments are `γζ = record.gamma⁻¹(ζ)`
/// and `γ⁻¹x = record.gamma·x`.
pub fn weighted_orbital_average(
    records: &[OrbitRecord],
    f: &TestFunction,
    zeta: &BoundaryPoint,
    x: &ModelPoint,
    grid: &[f64],
) -> Result<Vec<OrbitalAverage>> {
    if records.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let (c, g, h) = f.parts();
    let mut terms: Vec<(f64, f64, f64)> = records
        .iter()
        .map(|r| {
            let gv = g.at_boundary(&r.gamma.inverse().apply_boundary(zeta));
            let hv = h.at_point(&r.gamma.apply(x));
            (r.dist, gv, hv)
        })
        .collect();
    terms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::with_capacity(grid.len());
    let (mut k, mut n) = (0usize, 0u64);
    let (mut sum_f, mut sum_g, mut sum_h) = (0.0, 0.0, 0.0);
    for &t in grid {
        while k < terms.len() && terms[k].0 <= t {
            let (_, gv, hv) = terms[k];
            sum_f += c * gv * hv;
            sum_g += gv;
            sum_h += hv;
            n += 1;
            k += 1;
        }
        if n == 0 {
            return Err(Error::EmptyOrbit);
        }
        let nf = n as f64;
        out.push(OrbitalAverage { t, count: n, value: sum_f / nf, first_part: sum_g / nf, second_part: sum_h / nf });
    }
    Ok(out)
}

/// Largest pairwise gap `|F(ζᵢ,x,T) − F(ζⱼ,x,T)|` at each grid radius.
pub fn zeta_stability(
    records: &[OrbitRecord],
    f: &TestFunction,
    zetas: &[BoundaryPoint],
    x: &ModelPoint,
    grid: &[f64],
) -> Result<Vec<f64>> {
    let per_zeta = zetas
        .iter()
        .map(|z| weighted_orbital_average(records, f, z, x, grid))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..grid.len())
        .map(|k| {
            let vals: Vec<f64> = per_zeta.iter().map(|v| v[k].value).collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            hi - lo
        })
        .collect())
}
