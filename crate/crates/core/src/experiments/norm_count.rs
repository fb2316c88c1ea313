use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dist, BoundaryPoint, Model, ModelPoint, MoebiusMap};
use crate::group::{GroupSpec, Region};
use crate::orbit::{enumerate_ball_with, BallQuery, EnumerationOptions};

/// `|a|²+|b|²+|c|²+|d|² < 2 cosh T`.
pub fn norm_predicate(m: &MoebiusMap, t: f64) -> bool {
    m.norm_sqr() < 2.0 * t.cosh()
}

/// `d(γ·j, j) < T`.
pub fn distance_predicate(m: &MoebiusMap, t: f64) -> bool {
    let j = ModelPoint::j();
    dist(&m.apply(&j), &j) < t
}

#[derive(Debug, Clone, Serialize)]
pub struct NormCountReport {
    pub t: f64,
    /// Elements passing the norm predicate with `γ(z) ∈ Ω`.
    pub norm_count: u64,
    /// Elements passing the distance predicate with `γ(z) ∈ Ω`.
    pub distance_count: u64,
    /// Words on which the two predicates disagree.
    pub mismatches: Vec<String>,
    /// Elements examined (the enumerated ball).
    pub candidates: u64,
}

/// Both predicates over the closed ball of radius `T` about `j`.
pub fn compare_predicates(
    spec: &GroupSpec,
    z: &BoundaryPoint,
    omega: &Region,
    t: f64,
    opts: &EnumerationOptions,
) -> Result<NormCountReport> {
    if spec.model() != Model::H3 {
        return Err(Error::ModelMismatch("norm counting runs on a group over the complex numbers".into()));
    }
    let j = ModelPoint::j();
    let records = enumerate_ball_with(spec, &BallQuery::new(j, j, t)?, opts)?.records;
    let mut report = NormCountReport { t, norm_count: 0, distance_count: 0, mismatches: Vec::new(), candidates: 0 };
    for rec in &records {
        report.candidates += 1;
        let inside = omega.contains_boundary(&rec.gamma.apply_boundary(z));
        let by_norm = norm_predicate(&rec.gamma, t);
        let by_dist = distance_predicate(&rec.gamma, t);
        report.norm_count += (by_norm && inside) as u64;
        report.distance_count += (by_dist && inside) as u64;
        if by_norm != by_dist {
            report.mismatches.push(spec.render_word(&rec.word));
        }
    }
    Ok(report)
}

/// `#{γ : ‖γ‖² < 2 cosh T, γ(z) ∈ Ω}`, cross-checked against the distance
/// predicate; any disagreement is an error.
pub fn mobius_norm_count(
    spec: &GroupSpec,
    z: &BoundaryPoint,
    omega: &Region,
    t: f64,
    opts: &EnumerationOptions,
) -> Result<NormCountReport> {
    let report = compare_predicates(spec, z, omega, t, opts)?;
    if !report.mismatches.is_empty() {
        return Err(Error::PredicateMismatch(format!(
            "{} elements at T = {t}: {}",
            report.mismatches.len(),
            report.mismatches.join(", ")
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomPredicateCheck {
    pub samples: usize,
    pub inside: usize,
    pub mismatches: usize,
}

/// Random unimodular complex matrices.
pub fn random_unimodular(rng: &mut impl Rng) -> MoebiusMap {
    let coord = |rng: &mut dyn rand::RngCore| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    loop {
        let a = coord(rng);
        if a.norm() < 0.25 {
            continue;
        }
        let b = coord(rng);
        let c = coord(rng);
        let d = (Complex64::new(1.0, 0.0) + b * c) / a;
        if let Ok(m) = MoebiusMap::complex(a, b, c, d) {
            return m;
        }
    }
}

/// Evaluates both predicates on `n` seeded random matrices, cycling `T`
/// through `t_values`.
pub fn random_predicate_check(n: usize, seed: u64, t_values: &[f64]) -> RandomPredicateCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = RandomPredicateCheck { samples: n, inside: 0, mismatches: 0 };
    for k in 0..n {
        let m = random_unimodular(&mut rng);
        let t = t_values[k % t_values.len()];
        let (a, b) = (norm_predicate(&m, t), distance_predicate(&m, t));
        out.inside += a as usize;
        out.mismatches += (a != b) as usize;
    }
    out
}
