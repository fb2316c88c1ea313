//! Orbit enumeration in hyperbolic balls.
//!
//! For a group `Γ`, basepoints `x, y` and radius `T`, the engine lists every
//! `γ ∈ Γ` with `d(x, γ⁻¹y) ≤ T`. Certified groups are searched depth-first
//! over the tree of reduced words with a pruning bound that can never discard
//! a solution; a brute-force expansion to fixed word length serves as the
//! completeness oracle, and uncertified groups fall back to word expansion
//! with matrix deduplication.

mod csv;
mod engine;

pub use csv::{write_orbit_csv, orbit_csv_string};
pub use engine::{
    brute_force_ball, count_growth, enumerate_ball, enumerate_ball_with, enumerate_dedup, visit_ball,
    DedupResult, Enumeration, EnumerationStats, GrowthPoint, GrowthTable, PrunedNode,
};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryPoint, MoebiusMap, ModelPoint};
use crate::group::Word;

/// Default hard cap on the ball radius.
pub const DEFAULT_T_MAX: f64 = 16.0;

/// Largest word length the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_LEN: usize = 14;

/// Grid used to hash matrices in deduplication mode.
pub const DEDUP_GRID: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallQuery {
    pub x: ModelPoint,
    pub y: ModelPoint,
    pub radius: f64,
    /// Boundary point carried along as `γ(ξ)`.
    pub xi: Option<BoundaryPoint>,
}

impl BallQuery {
    pub fn new(x: ModelPoint, y: ModelPoint, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Config(format!("ball radius must be positive, got {radius}")));
        }
        if x.model() != y.model() {
            return Err(Error::ModelMismatch("x and y live in different models".into()));
        }
        Ok(BallQuery { x, y, radius, xi: None })
    }

    pub fn with_xi(mut self, xi: BoundaryPoint) -> Self {
        self.xi = Some(xi);
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub t_max: f64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Number of pruned nodes to keep for inspection.
    pub log_pruned: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { t_max: DEFAULT_T_MAX, threads: None, log_pruned: 0 }
    }
}

impl EnumerationOptions {
    pub fn threads(n: usize) -> Self {
        EnumerationOptions { threads: Some(n), ..Default::default() }
    }
}

/// One orbit point: the group element `γ` and the data of `γ⁻¹y` seen from `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRecord {
    pub word: Word,
    pub gamma: MoebiusMap,
    /// `d(x, γ⁻¹y)`.
    pub dist: f64,
    /// `dir(x, γ⁻¹y)`; absent when `γ⁻¹y = x`.
    pub direction: Option<BoundaryPoint>,
    /// `γ(ξ)`, when the query carries `ξ`.
    pub xi_image: Option<BoundaryPoint>,
}

impl OrbitRecord {
    /// The orbit point `γ⁻¹y`.
    pub fn orbit_point(&self, y: &ModelPoint) -> ModelPoint {
        self.gamma.inverse().apply(y)
    }
}

/// Sort order of every public result: distance, then word.
pub fn sort_records(records: &mut [OrbitRecord]) {
    records.sort_by(|a, b| a.dist.total_cmp(&b.dist).then_with(|| a.word.cmp(&b.word)));
}
