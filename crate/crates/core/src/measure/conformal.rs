use serde::Serialize;

use super::patterson::EmpiricalBoundaryMeasure;
use crate::error::{Error, Result};
use crate::geometry::busemann;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcResidual {
    pub arc: usize,
    pub observed: f64,
    pub predicted: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformalReport {
    pub residuals: Vec<ArcResidual>,
    /// Arcs with zero estimated mass in either measure.
    pub excluded: Vec<usize>,
    pub max_abs: f64,
    pub mean_abs: f64,
}

/// Compares raw arc-mass ratios `ν̂_y(A)/ν̂_x(A)` with the conformal
/// derivative `e^{-δ̂ β_ξ(y,x)}` at the arc midpoint `ξ`. Both measures must
/// be Patterson sums of the same orbit, on the same boundary arcs.
pub fn conformal_check(
    nu_x: &EmpiricalBoundaryMeasure,
    nu_y: &EmpiricalBoundaryMeasure,
    delta_hat: f64,
) -> Result<ConformalReport> {
    let (n, m) = (nu_x.partition.len(), nu_y.partition.len());
    if n != m {
        return Err(Error::Partition(format!("{n} arcs against {m}")));
    }
    let x = nu_x.basepoint;
    let y = nu_y.basepoint;
    let raw_x = nu_x.raw_masses();
    let raw_y = nu_y.raw_masses();
    let mut residuals = Vec::new();
    let mut excluded = Vec::new();
    for k in 0..n {
        let (ax, ay) = (&nu_x.partition[k], &nu_y.partition[k]);
        for end in [ax.start_point(), ax.end_point()] {
            if !ay.is_full() && end.chordal_distance(&ay.start_point()).min(end.chordal_distance(&ay.end_point())) > 1e-9 {
                return Err(Error::Partition(format!("arc {k} differs between the two measures")));
            }
        }
        if raw_x[k] <= 0.0 || raw_y[k] <= 0.0 {
            excluded.push(k);
            continue;
        }
        let observed = raw_y[k] / raw_x[k];
        let predicted = (-delta_hat * busemann(&ax.midpoint(), &y, &x)).exp();
        residuals.push(ArcResidual { arc: k, observed, predicted, residual: observed - predicted });
    }
    if residuals.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let abs: Vec<f64> = residuals.iter().map(|r| r.residual.abs()).collect();
    Ok(ConformalReport {
        max_abs: abs.iter().cloned().fold(0.0, f64::max),
        mean_abs: abs.iter().sum::<f64>() / abs.len() as f64,
        residuals,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoundaryArc, ModelPoint};
    use crate::measure::patterson::visual_reference;

    fn raw(basepoint: ModelPoint, partition: Vec<BoundaryArc>, raw: &[f64]) -> EmpiricalBoundaryMeasure {
        let scale: f64 = raw.iter().sum();
        EmpiricalBoundaryMeasure {
            basepoint,
            partition,
            masses: raw.iter().map(|m| m / scale).collect(),
            scale,
            params: None,
        }
    }

    #[test]
    fn same_basepoint_gives_zero_residuals() {
        let x = ModelPoint::i();
        let part = BoundaryArc::equal_partition(x, 16, 0.0).unwrap();
        let m = raw(x, part, &[1.0, 2.0, 0.5, 0.1, 3.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 0.2, 0.3, 0.4, 0.5, 0.6]);
        let r = conformal_check(&m, &m, 1.0).unwrap();
        assert_eq!(r.max_abs, 0.0);
    }

    #[test]
    fn visual_measures_are_exactly_conformal() {
        // oracle: Poisson kernel; the visual density at y relative to x is
        // e^{-β_ξ(y,x)}, and arc masses of width → 0 follow it at midpoints
        let x = ModelPoint::i();
        let y = ModelPoint::h2(0.3, 2.0).unwrap();
        let part = BoundaryArc::equal_partition(x, 720, 0.0).unwrap();
        let vx = visual_reference(&x, &part).unwrap();
        let part_y: Vec<BoundaryArc> = part.iter().map(|a| a.rebased(y).unwrap()).collect();
        let vy = EmpiricalBoundaryMeasure {
            basepoint: y,
            masses: part_y.iter().map(|a| a.visual_mass(&y)).collect(),
            partition: part_y,
            scale: 1.0,
            params: None,
        };
        let r = conformal_check(&vx, &vy, 1.0).unwrap();
        assert!(r.max_abs < 1e-3, "{}", r.max_abs);
    }

    #[test]
    fn common_scaling_leaves_residuals_unchanged() {
        let x = ModelPoint::i();
        let y = ModelPoint::h2(0.0, 2.0).unwrap();
        let part = BoundaryArc::equal_partition(x, 4, 0.2).unwrap();
        let part_y: Vec<_> = part.iter().map(|a| a.rebased(y).unwrap()).collect();
        let a = raw(x, part.clone(), &[1.0, 2.0, 3.0, 4.0]);
        let b = raw(y, part_y.clone(), &[2.0, 2.0, 1.0, 0.0]);
        let a7 = raw(x, part, &[7.0, 14.0, 21.0, 28.0]);
        let b7 = raw(y, part_y, &[14.0, 14.0, 7.0, 0.0]);
        let r = conformal_check(&a, &b, 0.8).unwrap();
        let r7 = conformal_check(&a7, &b7, 0.8).unwrap();
        assert_eq!(r.excluded, vec![3]);
        for (p, q) in r.residuals.iter().zip(&r7.residuals) {
            assert!((p.residual - q.residual).abs() < 1e-14);
        }
    }
}
