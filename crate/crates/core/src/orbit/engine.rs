use rayon::prelude::*;
use std::collections::HashMap;

use super::{
    sort_records, BallQuery, EnumerationOptions, OrbitRecord, BRUTE_FORCE_MAX_LEN, DEDUP_GRID,
};
use crate::error::{Error, Result};
use crate::geometry::{dir, dist, Model, MoebiusMap, ModelPoint};
use crate::group::{GroupSpec, Letter, Region, Word};

/// Depth of the word tree expanded before subtrees are handed to workers.
const SPLIT_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct EnumerationStats {
    pub visited: u64,
    pub pruned: u64,
    pub emitted: u64,
}

impl EnumerationStats {
    fn merge(&mut self, other: &EnumerationStats) {
        self.visited += other.visited;
        self.pruned += other.pruned;
        self.emitted += other.emitted;
    }
}

/// A subtree cut off by the pruning bound. `word` is the tree node, i.e. the
/// word of `g = γ⁻¹`, and `bound` the certified lower bound on `d(x, g u y)`
/// over all extensions `u`.
#[derive(Debug, Clone)]
pub struct PrunedNode {
    pub word: Word,
    pub matrix: MoebiusMap,
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub records: Vec<OrbitRecord>,
    pub stats: EnumerationStats,
    pub pruned: Vec<PrunedNode>,
}

struct Frame {
    depth: usize,
    letter: Letter,
    parent: MoebiusMap,
    /// `parent⁻¹ · x`, shared by all children of one node.
    pulled_x: ModelPoint,
}

/// Walks the tree of reduced words `w`, visiting `g = w` and reporting
/// `γ = g⁻¹` whenever `d(x, g·y) ≤ T`.
///
/// With confinement regions, every descendant of node `w = w'·s` sends `y`
/// into `w'(D(s))`, so `d(x, w'(D(s))) = d(w'⁻¹x, D(s))` bounds the whole
/// subtree from below. `slack = d(y, y₀)` corrects the bound when `y` itself
/// is not outside all regions, `y₀` being a point that is. The bound only
/// grows along a branch because the regions are nested.
struct Walker<'a> {
    spec: &'a GroupSpec,
    query: BallQuery,
    letters: Vec<MoebiusMap>,
    regions: Option<&'a [Region]>,
    slack: f64,
    max_len: usize,
    log_cap: usize,
}

#[derive(Default)]
struct Partial {
    records: Vec<OrbitRecord>,
    stats: EnumerationStats,
    pruned: Vec<PrunedNode>,
}

impl<'a> Walker<'a> {
    fn new(spec: &'a GroupSpec, query: BallQuery, regions: Option<&'a [Region]>, max_len: usize, log_cap: usize) -> Result<Self> {
        if query.x.model() != spec.model() {
            return Err(Error::ModelMismatch(format!("{} basepoints for a {} group", query.x.model(), spec.model())));
        }
        let slack = match regions {
            None => 0.0,
            Some(rs) => {
                if rs.iter().all(|r| r.excludes(&query.y)) {
                    0.0
                } else {
                    let y0 = spec.exterior_point().ok_or_else(|| {
                        Error::InvalidGroup("no point outside the ping-pong regions".into())
                    })?;
                    dist(&query.y, &y0)
                }
            }
        };
        Ok(Walker {
            spec,
            query,
            letters: spec.alphabet().map(|l| spec.letter_matrix(l)).collect(),
            regions,
            slack,
            max_len,
            log_cap,
        })
    }

    fn record(&self, path: &[Letter], g: &MoebiusMap) -> Option<OrbitRecord> {
        let point = g.apply(&self.query.y);
        let d = dist(&self.query.x, &point);
        if d > self.query.radius {
            return None;
        }
        let gamma = g.inverse();
        Some(OrbitRecord {
            word: Word::from_reduced(path.iter().rev().map(|l| l.inverse()).collect()),
            gamma,
            dist: d,
            direction: dir(&self.query.x, &point).ok(),
            xi_image: self.query.xi.map(|xi| gamma.apply_boundary(&xi)),
        })
    }

    /// Visits child `parent · letter`; `None` when the subtree is pruned.
    fn visit(&self, frame: &Frame, path: &[Letter], out: &mut Partial) -> Option<MoebiusMap> {
        out.stats.visited += 1;
        if let Some(regions) = self.regions {
            let bound = regions[frame.letter.code()].distance_from(&frame.pulled_x) - self.slack;
            if bound > self.query.radius {
                out.stats.pruned += 1;
                if out.pruned.len() < self.log_cap {
                    let mut w = path.to_vec();
                    w.push(frame.letter);
                    out.pruned.push(PrunedNode {
                        word: Word::from_reduced(w),
                        matrix: frame.parent.compose(&self.letters[frame.letter.code()]),
                        bound,
                    });
                }
                return None;
            }
        }
        Some(frame.parent.compose(&self.letters[frame.letter.code()]))
    }

    fn push_children(&self, stack: &mut Vec<Frame>, depth: usize, last: Option<Letter>, g: &MoebiusMap) {
        if depth >= self.max_len {
            return;
        }
        let pulled_x = g.inverse().apply(&self.query.x);
        // reversed so that children pop in letter order
        for code in (0..self.letters.len()).rev() {
            let letter = Letter::from_code(code);
            if Some(letter.inverse()) == last {
                continue;
            }
            stack.push(Frame { depth, letter, parent: *g, pulled_x });
        }
    }

    /// Depth-first walk of the subtree below `path` (the node itself excluded).
    fn walk(&self, path: &mut Vec<Letter>, g: MoebiusMap, out: &mut Partial, sink: &mut dyn FnMut(OrbitRecord)) {
        let base = path.len();
        let mut stack = Vec::new();
        self.push_children(&mut stack, base, path.last().copied(), &g);
        while let Some(frame) = stack.pop() {
            path.truncate(frame.depth);
            let Some(child) = self.visit(&frame, path, out) else { continue };
            path.push(frame.letter);
            if let Some(rec) = self.record(path, &child) {
                out.stats.emitted += 1;
                sink(rec);
            }
            self.push_children(&mut stack, path.len(), Some(frame.letter), &child);
        }
        path.truncate(base);
    }

    /// Root and the first tree levels, sequentially. Returns the frontier.
    fn expand_top(&self, out: &mut Partial, sink: &mut dyn FnMut(OrbitRecord)) -> Vec<(Vec<Letter>, MoebiusMap)> {
        let id = MoebiusMap::identity(self.spec.model());
        if let Some(rec) = self.record(&[], &id) {
            out.stats.emitted += 1;
            sink(rec);
        }
        let mut frontier = vec![(Vec::new(), id)];
        for depth in 0..SPLIT_DEPTH.min(self.max_len) {
            let mut next = Vec::new();
            for (path, g) in &frontier {
                let mut stack = Vec::new();
                self.push_children(&mut stack, depth, path.last().copied(), g);
                while let Some(frame) = stack.pop() {
                    let Some(child) = self.visit(&frame, path, out) else { continue };
                    let mut child_path = path.clone();
                    child_path.push(frame.letter);
                    if let Some(rec) = self.record(&child_path, &child) {
                        out.stats.emitted += 1;
                        sink(rec);
                    }
                    next.push((child_path, child));
                }
            }
            frontier = next;
        }
        if self.max_len <= SPLIT_DEPTH {
            frontier.clear();
        }
        frontier
    }

    fn run(&self, threads: Option<usize>) -> Result<Enumeration> {
        let mut top = Partial::default();
        let mut top_records = Vec::new();
        let frontier = self.expand_top(&mut top, &mut |r| top_records.push(r));

        let task = |(path, g): &(Vec<Letter>, MoebiusMap)| {
            let mut part = Partial::default();
            let mut records = Vec::new();
            let mut path = path.clone();
            self.walk(&mut path, *g, &mut part, &mut |r| records.push(r));
            part.records = records;
            part
        };
        let parts: Vec<Partial> = match threads {
            Some(1) => frontier.iter().map(task).collect(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()?
                .install(|| frontier.par_iter().map(task).collect()),
            None => frontier.par_iter().map(task).collect(),
        };

        let mut records = top_records;
        let mut stats = top.stats;
        let mut pruned = top.pruned;
        for part in parts {
            records.extend(part.records);
            stats.merge(&part.stats);
            pruned.extend(part.pruned);
        }
        pruned.truncate(self.log_cap);
        sort_records(&mut records);
        Ok(Enumeration { records, stats, pruned })
    }
}

fn check_radius(q: &BallQuery, opts: &EnumerationOptions) -> Result<()> {
    if q.radius > opts.t_max {
        return Err(Error::RadiusCap { radius: q.radius, cap: opts.t_max });
    }
    Ok(())
}

fn certified_regions(spec: &GroupSpec) -> Result<&[Region]> {
    spec.certification()
        .regions()
        .ok_or_else(|| Error::Uncertified(spec.name().to_string()))
}

/// Every `γ` with `d(x, γ⁻¹y) ≤ T`, sorted by distance then word, together
/// with search statistics.
pub fn enumerate_ball_with(spec: &GroupSpec, q: &BallQuery, opts: &EnumerationOptions) -> Result<Enumeration> {
    check_radius(q, opts)?;
    let regions = certified_regions(spec)?;
    Walker::new(spec, *q, Some(regions), usize::MAX, opts.log_pruned)?.run(opts.threads)
}

/// Certified-complete enumeration of `{γ : d(x, γ⁻¹y) ≤ T}`.
pub fn enumerate_ball(spec: &GroupSpec, q: &BallQuery) -> Result<Vec<OrbitRecord>> {
    Ok(enumerate_ball_with(spec, q, &EnumerationOptions::default())?.records)
}

/// Streams records to `sink` in depth-first order on the calling thread.
pub fn visit_ball(
    spec: &GroupSpec,
    q: &BallQuery,
    opts: &EnumerationOptions,
    mut sink: impl FnMut(OrbitRecord),
) -> Result<EnumerationStats> {
    check_radius(q, opts)?;
    let regions = certified_regions(spec)?;
    let walker = Walker::new(spec, *q, Some(regions), usize::MAX, 0)?;
    let mut part = Partial::default();
    let id = MoebiusMap::identity(spec.model());
    if let Some(rec) = walker.record(&[], &id) {
        part.stats.emitted += 1;
        sink(rec);
    }
    walker.walk(&mut Vec::new(), id, &mut part, &mut sink);
    Ok(part.stats)
}

/// All reduced words of length at most `max_len`, filtered by distance;
/// no pruning. Valid for any spec.
pub fn brute_force_ball(spec: &GroupSpec, q: &BallQuery, max_len: usize) -> Result<Vec<OrbitRecord>> {
    if max_len > BRUTE_FORCE_MAX_LEN {
        return Err(Error::WordLengthCap(max_len));
    }
    Ok(Walker::new(spec, *q, None, max_len, 0)?.run(None)?.records)
}

#[derive(Debug, Clone)]
pub struct DedupResult {
    pub records: Vec<OrbitRecord>,
    /// Reduced words within the ball, duplicates included.
    pub word_count: usize,
    /// Distinct group elements within the ball.
    pub element_count: usize,
    /// Matrices that share a hash cell without being equal.
    pub warnings: Vec<String>,
    /// Always false: completeness is not claimed.
    pub certified: bool,
}

/// Word expansion to length `max_len` with duplicates removed by hashing
/// canonical-sign matrices on a `1e-9` grid. Each element is represented by
/// its shortest (then lexicographically smallest) word.
pub fn enumerate_dedup(spec: &GroupSpec, q: &BallQuery, max_len: usize) -> Result<DedupResult> {
    let all = brute_force_ball(spec, q, max_len)?;
    let word_count = all.len();
    let mut cells: HashMap<[i64; 8], OrbitRecord> = HashMap::new();
    let mut warnings = Vec::new();
    for rec in all {
        let key = rec.gamma.key(DEDUP_GRID);
        match cells.get_mut(&key) {
            None => {
                cells.insert(key, rec);
            }
            Some(kept) => {
                let scale = 1.0 + kept.gamma.norm_sqr().sqrt();
                if kept.gamma.distance_up_to_sign(&rec.gamma) > 1e-11 * scale {
                    warnings.push(format!(
                        "hash collision between distinct matrices: {} and {}",
                        spec.render_word(&kept.word),
                        spec.render_word(&rec.word)
                    ));
                }
                let shorter = (rec.word.len(), &rec.word) < (kept.word.len(), &kept.word);
                if shorter {
                    *kept = rec;
                }
            }
        }
    }
    let mut records: Vec<OrbitRecord> = cells.into_values().collect();
    sort_records(&mut records);
    Ok(DedupResult { element_count: records.len(), records, word_count, warnings, certified: false })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GrowthPoint {
    pub t: f64,
    /// Real-valued so that synthetic tables can be fitted too.
    pub count: f64,
}

/// Orbit counts `N(T) = #{γ : d(x, γ⁻¹y) ≤ T}` on a grid, plus the sorted
/// distances they were bucketed from.
#[derive(Debug, Clone)]
pub struct GrowthTable {
    pub model: Model,
    pub points: Vec<GrowthPoint>,
    pub distances: Vec<f64>,
}

impl GrowthTable {
    /// Table from counts alone (no distance data).
    pub fn from_counts(model: Model, points: Vec<GrowthPoint>) -> Self {
        GrowthTable { model, points, distances: Vec::new() }
    }

    /// Buckets sorted distances onto a grid.
    pub fn from_distances(model: Model, grid: &[f64], mut distances: Vec<f64>) -> Self {
        distances.sort_by(f64::total_cmp);
        let points = grid
            .iter()
            .map(|&t| GrowthPoint { t, count: distances.partition_point(|&d| d <= t) as f64 })
            .collect();
        GrowthTable { model, points, distances }
    }
}

/// `N(T)` on an increasing grid, from one enumeration at the largest `T`.
pub fn count_growth(
    spec: &GroupSpec,
    x: &ModelPoint,
    y: &ModelPoint,
    grid: &[f64],
    opts: &EnumerationOptions,
) -> Result<GrowthTable> {
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) || grid[0] <= 0.0 {
        return Err(Error::GrowthTable("grid must be positive and strictly increasing".into()));
    }
    let t_max = *grid.last().expect("non-empty");
    let q = BallQuery::new(*x, *y, t_max)?;
    let records = enumerate_ball_with(spec, &q, opts)?.records;
    let distances = records.iter().map(|r| r.dist).collect();
    Ok(GrowthTable::from_distances(spec.model(), grid, distances))
}
