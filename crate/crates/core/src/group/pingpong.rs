use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::region::Region;
use super::word::Letter;
use super::Generator;
use crate::error::{Error, Result};
use crate::geometry::{BoundaryPoint, MoebiusMap};

/// Minimum Euclidean gap required between ping-pong disks.
pub const DISJOINT_MARGIN: f64 = 1e-9;

/// Separation between the disks of two letters.
#[derive(Debug, Clone, Serialize)]
pub struct PairMargin {
    pub first: String,
    pub second: String,
    pub gap: f64,
}

/// Proof that a generating set plays ping-pong on disjoint isometric disks,
/// hence generates a free discrete group.
#[derive(Debug, Clone, Serialize)]
pub struct PingPongCertificate {
    /// Disk of each letter (indexed by [`Letter::code`]): the region every
    /// reduced word starting with that letter sends the exterior into.
    pub regions: Vec<Region>,
    pub margins: Vec<PairMargin>,
    pub min_margin: f64,
}

/// Isometric circle of `[[a,b],[c,d]]`: center `-d/c`, radius `1/|c|`.
pub fn isometric_circle(m: &MoebiusMap) -> Option<Region> {
    let c = m.c();
    if c.norm() < 1e-14 {
        return None;
    }
    Some(Region::Ball { center: -m.d() / c, radius: 1.0 / c.norm() })
}

pub(crate) fn letter_label(generators: &[Generator], l: Letter) -> String {
    let base = &generators[l.generator()].label;
    if l.is_inverse() {
        format!("{base}^-1")
    } else {
        base.clone()
    }
}

pub(crate) fn letter_matrix(generators: &[Generator], l: Letter) -> MoebiusMap {
    let m = generators[l.generator()].matrix;
    if l.is_inverse() {
        m.inverse()
    } else {
        m
    }
}

/// Rejects groups that cannot be non-elementary: fewer than two generators,
/// or all generators sharing one fixed-point set.
pub(crate) fn check_non_elementary(generators: &[Generator]) -> Result<()> {
    if generators.len() < 2 {
        return Err(Error::PingPong(format!(
            "elementary group: {} generator(s), need at least 2",
            generators.len()
        )));
    }
    let sets: Vec<Vec<BoundaryPoint>> = generators.iter().map(|g| g.matrix.fixed_points()).collect();
    let same = |p: &[BoundaryPoint], q: &[BoundaryPoint]| {
        p.len() == q.len() && p.iter().all(|a| q.iter().any(|b| a.chordal_distance(b) < 1e-9))
    };
    let distinct = (0..sets.len()).any(|i| (i + 1..sets.len()).any(|j| !same(&sets[i], &sets[j])));
    if !distinct {
        return Err(Error::PingPong("elementary group: generators share their fixed points".into()));
    }
    Ok(())
}

/// Checks the ping-pong configuration of the isometric circles.
///
/// Letter `g` owns the disk bounded by the isometric circle of `g⁻¹` (center
/// `a/c`), and `g` maps the exterior of the disk of `g⁻¹` onto the interior of
/// its own. The check requires all `2k` closed disks to be pairwise disjoint
/// with margin [`DISJOINT_MARGIN`], and verifies the mapping property by
/// sampling the boundary circle (whose image must be the target circle) and
/// the point `∞` (which must land inside).
pub fn validate_pingpong(generators: &[Generator]) -> Result<PingPongCertificate> {
    check_non_elementary(generators)?;
    let k = generators.len();
    let mut regions = Vec::with_capacity(2 * k);
    for code in 0..2 * k {
        let l = Letter::from_code(code);
        // disk of letter l = isometric circle of l⁻¹
        let inv = letter_matrix(generators, l.inverse());
        let region = isometric_circle(&inv).ok_or_else(|| {
            Error::PingPong(format!(
                "generator {} has c = 0: isometric circle undefined (conjugate the presentation first)",
                letter_label(generators, l)
            ))
        })?;
        regions.push(region);
    }

    let mut margins = Vec::new();
    let mut min_margin = f64::INFINITY;
    for i in 0..2 * k {
        for j in i + 1..2 * k {
            let gap = regions[i].gap(&regions[j]);
            let (first, second) =
                (letter_label(generators, Letter::from_code(i)), letter_label(generators, Letter::from_code(j)));
            if gap < DISJOINT_MARGIN {
                return Err(Error::PingPong(format!(
                    "disks of ({first}, {second}) overlap or touch: gap {gap:.3e}"
                )));
            }
            min_margin = min_margin.min(gap);
            margins.push(PairMargin { first, second, gap });
        }
    }

    for code in 0..2 * k {
        let l = Letter::from_code(code);
        let m = letter_matrix(generators, l);
        check_mapping(&m, &regions[l.inverse().code()], &regions[code])
            .map_err(|msg| Error::PingPong(format!("letter {}: {msg}", letter_label(generators, l))))?;
    }

    Ok(PingPongCertificate { regions, margins, min_margin })
}

/// `m` must send the circle bounding `source` onto the circle bounding
/// `target` and send `∞` (exterior of `source`) inside `target`.
fn check_mapping(m: &MoebiusMap, source: &Region, target: &Region) -> std::result::Result<(), String> {
    let (Region::Ball { center: cs, radius: rs }, Region::Ball { center: ct, radius: rt }) = (source, target) else {
        return Err("ping-pong regions must be disks".into());
    };
    let tol = 1e-9 * rt.max(1.0);
    for k in 0..64 {
        let theta = 2.0 * PI * k as f64 / 64.0;
        let on_circle = cs + Complex64::from_polar(*rs, theta);
        match m.apply_boundary(&BoundaryPoint::Finite(on_circle)) {
            BoundaryPoint::Finite(w) if ((w - ct).norm() - rt).abs() <= tol => {}
            other => return Err(format!("image of the source circle leaves the target circle at {other}")),
        }
    }
    match m.apply_boundary(&BoundaryPoint::Infinity) {
        BoundaryPoint::Finite(w) if (w - ct).norm() < *rt => Ok(()),
        _ => Err("exterior is not mapped into the target disk".into()),
    }
}
