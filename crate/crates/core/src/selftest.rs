//! Seeded property suite behind the `selftest` command.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::time::Instant;

use crate::error::Result;
use crate::experiments::{random_unimodular, Check, Report};
use crate::geometry::{
    busemann, dist, dist_via_norm, geodesic_cocycle, BoundaryPoint, Geodesic, Model, ModelPoint, MoebiusMap,
};
use crate::group::{builtin, gamma2};
use crate::orbit::{brute_force_ball, enumerate_ball, BallQuery};

/// Samples per property.
pub const SAMPLES: usize = 10_000;

/// Random points, boundary points and isometries for one model.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub model: Model,
}

impl Sampler {
    pub fn new(model: Model, seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), model }
    }

    fn horizontal(&mut self) -> Complex64 {
        let re = self.rng.gen_range(-5.0..5.0);
        let im = if self.model == Model::H3 { self.rng.gen_range(-5.0..5.0) } else { 0.0 };
        Complex64::new(re, im)
    }

    pub fn point(&mut self) -> ModelPoint {
        let h = 10f64.powf(self.rng.gen_range(-1.0..1.0));
        let z = self.horizontal();
        ModelPoint::new(self.model, z, h).expect("positive height")
    }

    /// Finite with probability 0.9, otherwise `∞`.
    pub fn boundary(&mut self) -> BoundaryPoint {
        if self.rng.gen_bool(0.1) {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(self.horizontal())
        }
    }

    pub fn isometry(&mut self) -> MoebiusMap {
        match self.model {
            Model::H3 => random_unimodular(&mut self.rng),
            Model::H2 => loop {
                let a: f64 = self.rng.gen_range(-2.0..2.0);
                if a.abs() < 0.25 {
                    continue;
                }
                let b: f64 = self.rng.gen_range(-2.0..2.0);
                let c: f64 = self.rng.gen_range(-2.0..2.0);
                if let Ok(m) = MoebiusMap::real(a, b, c, (1.0 + b * c) / a) {
                    break m;
                }
            },
        }
    }

    pub fn geodesic(&mut self) -> Geodesic {
        loop {
            if let Ok(g) = Geodesic::new(self.boundary(), self.boundary()) {
                break g;
            }
        }
    }
}

/// Worst violation of each geometric property over `n` samples per model.
/// Values are excesses over zero: `|lhs − rhs|` for identities and
/// `lhs − rhs` for inequalities.
#[derive(Debug, Clone, Copy, Default, serde::Serialize)]
pub struct PropertyWorst {
    pub busemann_additivity: f64,
    pub busemann_equivariance: f64,
    pub isometry: f64,
    pub dist_via_norm: f64,
    pub projection_lipschitz: f64,
    pub cocycle_bound: f64,
}

pub fn geometry_properties(n: usize, seed: u64) -> PropertyWorst {
    let mut w = PropertyWorst {
        projection_lipschitz: f64::NEG_INFINITY,
        cocycle_bound: f64::NEG_INFINITY,
        ..Default::default()
    };
    for (k, model) in [Model::H2, Model::H3].into_iter().enumerate() {
        let mut s = Sampler::new(model, seed.wrapping_add(k as u64));
        let o = ModelPoint::origin(model);
        for _ in 0..n / 2 {
            let (x, y, z) = (s.point(), s.point(), s.point());
            let xi = s.boundary();
            let g = s.isometry();

            let add = busemann(&xi, &x, &z) - busemann(&xi, &x, &y) - busemann(&xi, &y, &z);
            w.busemann_additivity = w.busemann_additivity.max(add.abs());
            let eq = busemann(&g.apply_boundary(&xi), &g.apply(&x), &g.apply(&y)) - busemann(&xi, &x, &y);
            w.busemann_equivariance = w.busemann_equivariance.max(eq.abs());

            w.isometry = w.isometry.max((dist(&g.apply(&x), &g.apply(&y)) - dist(&x, &y)).abs());
            w.dist_via_norm = w.dist_via_norm.max((dist_via_norm(&g) - dist(&g.apply(&o), &o)).abs());

            let geo = s.geodesic();
            let lip = (geo.project(&x).s - geo.project(&y).s).abs() - dist(&x, &y);
            w.projection_lipschitz = w.projection_lipschitz.max(lip);
            let c = geodesic_cocycle(&g, &geo, &x).abs() - dist(&x, &g.apply(&x));
            w.cocycle_bound = w.cocycle_bound.max(c);
        }
    }
    w
}

/// Pruned enumeration against the brute-force oracle on small balls.
fn enumeration_oracle() -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for (name, t, len) in [("gamma2", 5.0, 8), ("schottky_h2", 7.0, 8), ("schottky_h3", 6.0, 6)] {
        let spec = if name == "gamma2" { gamma2() } else { builtin(name)? };
        let o = ModelPoint::origin(spec.model());
        let q = BallQuery::new(o, o, t)?;
        let key = |r: &crate::orbit::OrbitRecord| r.gamma.key(crate::orbit::DEDUP_GRID);
        let mut a: Vec<_> = enumerate_ball(&spec, &q)?.iter().map(key).collect();
        let mut b: Vec<_> = brute_force_ball(&spec, &q, len)?.iter().map(key).collect();
        a.sort();
        b.sort();
        out.push((format!("enumeration matches brute force on {name}, T = {t}"), a == b));
    }
    Ok(out)
}

/// Runs the property suite and the enumeration oracle.
pub fn run_selftest(seed: u64) -> Result<Report> {
    let started = Instant::now();
    let w = geometry_properties(SAMPLES, seed);
    let seconds = started.elapsed().as_secs_f64();
    let mut report = Report::new("selftest", json!({ "seed": seed, "samples": SAMPLES }));
    report.fit("worst", w)?;
    report.fit("property_seconds", seconds)?;
    report.check(Check::at_most("Busemann additivity", w.busemann_additivity, 1e-9));
    report.check(Check::at_most("Busemann equivariance", w.busemann_equivariance, 1e-9));
    report.check(Check::at_most("isometry of dist", w.isometry, 1e-10));
    report.check(Check::at_most("dist_via_norm against dist", w.dist_via_norm, 1e-10));
    report.check(Check::at_most("projection 1-Lipschitz excess", w.projection_lipschitz, 1e-9));
    report.check(Check::at_most("cocycle bound excess", w.cocycle_bound, 1e-9));
    for (name, ok) in enumeration_oracle()? {
        report.check(Check::holds(name, ok));
    }
    report.check(Check::at_most("property suite seconds", seconds, 30.0));
    Ok(report)
}
