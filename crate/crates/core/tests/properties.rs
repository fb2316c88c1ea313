use hyperorbit::experiments::{Experiment, ExperimentConfig};
use hyperorbit::geometry::*;
use hyperorbit::group::{builtin, GroupFile};
use num_complex::Complex64;
use proptest::prelude::*;
use serde_json::json;

fn h2_point() -> impl Strategy<Value = ModelPoint> {
    (-5.0..5.0f64, -1.0..1.0f64).prop_map(|(u, e)| ModelPoint::h2(u, 10f64.powf(e)).unwrap())
}

fn h3_point() -> impl Strategy<Value = ModelPoint> {
    (-5.0..5.0f64, -5.0..5.0f64, -1.0..1.0f64).prop_map(|(u, w, e)| ModelPoint::h3(u, w, 10f64.powf(e)).unwrap())
}

fn sl2r() -> impl Strategy<Value = MoebiusMap> {
    (0.25..2.0f64, any::<bool>(), -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, neg, b, c)| {
        let a = if neg { -a } else { a };
        MoebiusMap::real(a, b, c, (1.0 + b * c) / a).unwrap()
    })
}

fn sl2c() -> impl Strategy<Value = MoebiusMap> {
    (0.25..2.0f64, -3.0..3.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(
        |(r, t, br, bi, cr, ci)| {
            let a = Complex64::from_polar(r, t);
            let (b, c) = (Complex64::new(br, bi), Complex64::new(cr, ci));
            MoebiusMap::complex(a, b, c, (1.0 + b * c) / a).unwrap()
        },
    )
}

/// `cosh d` from the upper half-space formula, written out directly.
fn cosh_dist(p: &ModelPoint, q: &ModelPoint) -> f64 {
    let dz = (p.horizontal() - q.horizontal()).norm_sqr();
    1.0 + (dz + (p.height() - q.height()).powi(2)) / (2.0 * p.height() * q.height())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn distance_matches_cosh_formula(p in h3_point(), q in h3_point()) {
        let d = dist(&p, &q);
        prop_assert!((d.cosh() - cosh_dist(&p, &q)).abs() <= 1e-9 * cosh_dist(&p, &q));
        prop_assert_eq!(d, dist(&q, &p));
    }

    #[test]
    fn triangle_inequality(p in h2_point(), q in h2_point(), r in h2_point()) {
        prop_assert!(dist(&p, &r) <= dist(&p, &q) + dist(&q, &r) + 1e-9);
    }

    #[test]
    fn real_maps_are_isometries(g in sl2r(), p in h2_point(), q in h2_point()) {
        prop_assert!((dist(&g.apply(&p), &g.apply(&q)) - dist(&p, &q)).abs() < 1e-9);
    }

    #[test]
    fn complex_maps_are_isometries(g in sl2c(), p in h3_point(), q in h3_point()) {
        prop_assert!((dist(&g.apply(&p), &g.apply(&q)) - dist(&p, &q)).abs() < 1e-8);
    }

    #[test]
    fn action_is_a_homomorphism(g in sl2c(), h in sl2c(), p in h3_point()) {
        let a = g.compose(&h).apply(&p);
        let b = g.apply(&h.apply(&p));
        prop_assert!(dist(&a, &b) < 1e-8);
        prop_assert!(dist(&g.inverse().apply(&g.apply(&p)), &p) < 1e-8);
    }

    #[test]
    fn norm_gives_distance_from_j(g in sl2c()) {
        let j = ModelPoint::j();
        let two_cosh = g.norm_sqr();
        prop_assert!((2.0 * cosh_dist(&g.apply(&j), &j) - two_cosh).abs() < 1e-9 * two_cosh);
        prop_assert!((dist_via_norm(&g) - dist(&g.apply(&j), &j)).abs() < 1e-9);
    }

    #[test]
    fn visual_angle_inverts(p in h2_point(), theta in 0.01..6.27f64) {
        let xi = boundary_at_angle(&p, theta);
        prop_assert!((visual_angle(&p, &xi) - theta).abs() < 1e-9);
    }

    #[test]
    fn busemann_is_a_limit_of_distance_differences(p in h2_point(), q in h2_point(), s in -3.0..3.0f64) {
        let xi = BoundaryPoint::real(s);
        // a point deep in a horoball at ξ
        let far = ModelPoint::h2(s, 1e-7).unwrap();
        let approx = dist(&p, &far) - dist(&q, &far);
        prop_assert!((busemann(&xi, &p, &q) - approx).abs() < 1e-5);
    }

    #[test]
    fn config_survives_json(radius in 5.0..15.0f64, arcs in 4usize..64, seed in any::<u64>(), lo in 1.0..4.0f64) {
        let patch = json!({
            "radius": radius,
            "arcs": arcs,
            "seed": seed,
            "t_grid": [lo, lo + 0.5, lo + 1.5],
            "xi": [0.25, -1.5],
        });
        let cfg = ExperimentConfig::defaults(Experiment::MeasurePs).patched(patch).unwrap();
        let text = serde_json::to_string(&cfg.to_value()).unwrap();
        let back = ExperimentConfig::from_json(Experiment::MeasurePs, &text).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

#[test]
fn group_files_round_trip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["gamma2", "schottky_h2", "schottky_h3", "modular"] {
        let spec = builtin(name).unwrap();
        let path = dir.path().join(format!("{name}.json"));
        GroupFile::write(&spec, &path).unwrap();
        let back = GroupFile::read(&path).unwrap();
        assert_eq!(back.generators(), spec.generators());
        assert_eq!(back.model(), spec.model());
        assert_eq!(back.certification().mode(), spec.certification().mode());
    }
}

#[test]
fn config_rejects_unknown_keys_and_bad_grids() {
    let base = ExperimentConfig::defaults(Experiment::Delta);
    assert!(base.patched(json!({ "radious": 3.0 })).is_err());
    assert!(base.patched(json!({ "t_grid": [2.0, 1.0] })).is_err());
    assert!(base.patched(json!([1, 2])).is_err());
}
