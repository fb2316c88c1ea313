use hyperorbit::geometry::*;
use hyperorbit::group::{builtin, gamma2, GroupSpec, Letter, Word};
use hyperorbit::orbit::*;
use num_complex::Complex64;

fn cosh_dist(p: &ModelPoint, q: &ModelPoint) -> f64 {
    let dz = (p.horizontal() - q.horizontal()).norm_sqr();
    let dh = (p.height() - q.height()).powi(2);
    (1.0 + (dz + dh) / (2.0 * p.height() * q.height())).acosh()
}

fn keys(records: &[OrbitRecord]) -> Vec<MatrixKey> {
    let mut k: Vec<_> = records.iter().map(|r| r.gamma.key(DEDUP_GRID)).collect();
    k.sort();
    k
}

#[test]
fn records_are_inside_the_ball_and_sorted() {
    let spec = builtin("schottky_h3").unwrap();
    let x = ModelPoint::j();
    let y = ModelPoint::h3(0.2, -0.1, 1.3).unwrap();
    let q = BallQuery::new(x, y, 7.0).unwrap();
    let recs = enumerate_ball(&spec, &q).unwrap();
    assert!(recs.len() >= 10);
    for w in recs.windows(2) {
        assert!(w[0].dist <= w[1].dist);
    }
    for r in &recs {
        let p = r.gamma.inverse().apply(&y);
        let d = cosh_dist(&x, &p);
        assert!((d - r.dist).abs() < 1e-9);
        assert!(d <= 7.0 + 1e-9);
        let m = spec.word_to_matrix(&r.word);
        assert!(m.distance_up_to_sign(&r.gamma) < 1e-8 * (1.0 + r.gamma.norm_sqr().sqrt()));
    }
}

#[test]
fn matches_brute_force_with_distinct_basepoints() {
    let spec = gamma2();
    let x = ModelPoint::h2(0.3, 1.2).unwrap();
    let y = ModelPoint::h2(-0.4, 0.8).unwrap();
    let q = BallQuery::new(x, y, 5.5).unwrap();
    let fast = enumerate_ball(&spec, &q).unwrap();
    let brute = brute_force_ball(&spec, &q, 12).unwrap();
    assert_eq!(keys(&fast), keys(&brute));
}

#[test]
fn matches_brute_force_on_schottky_h2() {
    let spec = builtin("schottky_h2").unwrap();
    let x = ModelPoint::i();
    let q = BallQuery::new(x, x, 8.0).unwrap();
    assert_eq!(keys(&enumerate_ball(&spec, &q).unwrap()), keys(&brute_force_ball(&spec, &q, 12).unwrap()));
}

fn extend(spec: &GroupSpec, word: &Word, depth: usize, out: &mut Vec<MoebiusMap>) {
    let g = spec.word_to_matrix(word);
    out.push(g);
    if depth == 0 {
        return;
    }
    for l in spec.alphabet() {
        if word.letters().last().is_some_and(|&last: &Letter| last.inverse() == l) {
            continue;
        }
        let mut v = word.letters().to_vec();
        v.push(l);
        extend(spec, &Word::reduce(&v), depth - 1, out);
    }
}

#[test]
fn pruned_subtrees_stay_outside() {
    for spec in [gamma2(), builtin("schottky_h2").unwrap(), builtin("schottky_h3").unwrap()] {
        let x = ModelPoint::origin(spec.model());
        let q = BallQuery::new(x, x, 6.0).unwrap();
        let opts = EnumerationOptions { log_pruned: 1000, ..Default::default() };
        let e = enumerate_ball_with(&spec, &q, &opts).unwrap();
        assert!(e.pruned.len() >= 30, "{}: {}", spec.name(), e.pruned.len());
        for node in &e.pruned {
            assert!(node.bound > 6.0);
            let mut desc = Vec::new();
            extend(&spec, &node.word, 3, &mut desc);
            for g in desc {
                assert!(cosh_dist(&x, &g.apply(&x)) >= node.bound - 1e-9);
            }
        }
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let spec = gamma2();
    let x = ModelPoint::i();
    let q = BallQuery::new(x, x, 9.0).unwrap().with_xi(BoundaryPoint::real(0.0));
    let a = enumerate_ball_with(&spec, &q, &EnumerationOptions::threads(1)).unwrap();
    let b = enumerate_ball_with(&spec, &q, &EnumerationOptions::threads(3)).unwrap();
    assert_eq!(a.records, b.records);
    assert_eq!(a.stats.emitted, b.stats.emitted);
    assert_eq!(
        orbit_csv_string(&spec, &x, &a.records).unwrap(),
        orbit_csv_string(&spec, &x, &b.records).unwrap()
    );
}

#[test]
fn growth_is_monotone() {
    let spec = builtin("schottky_h3").unwrap();
    let x = ModelPoint::j();
    let recs = enumerate_ball(&spec, &BallQuery::new(x, x, 8.0).unwrap()).unwrap();
    let grid: Vec<f64> = (1..=16).map(|k| 0.5 * k as f64).collect();
    let table = GrowthTable::from_distances(Model::H3, &grid, recs.iter().map(|r| r.dist).collect());
    for w in table.points.windows(2) {
        assert!(w[0].count <= w[1].count);
    }
    assert_eq!(table.points.last().unwrap().count as usize, recs.len());
}

#[test]
fn refuses_bad_queries() {
    let spec = gamma2();
    let x = ModelPoint::i();
    assert!(enumerate_ball(&spec, &BallQuery::new(x, x, 100.0).unwrap()).is_err());
    let h3 = ModelPoint::new(Model::H3, Complex64::new(0.0, 0.0), 1.0).unwrap();
    assert!(matches!(
        enumerate_ball(&spec, &BallQuery::new(h3, h3, 3.0).unwrap()),
        Err(hyperorbit::Error::ModelMismatch(_))
    ));
    assert!(enumerate_ball(&builtin("modular").unwrap(), &BallQuery::new(x, x, 3.0).unwrap()).is_err());
}
