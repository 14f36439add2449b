use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use regmod::geometry::spec::{parse_collection, preset, PRESETS};
use regmod::geometry::{dist, intersection_distance, weighted_product_norm, GeomCfg, SetCollection, SetOracle, Side};
use regmod::Error;

/// Nearest point on a parametrized planar curve by dense sampling followed by
/// golden-section refinement around the best sample.
fn curve_distance(x: &[f64], curve: impl Fn(f64) -> [f64; 2], lo: f64, hi: f64) -> f64 {
    let d = |t: f64| {
        let p = curve(t);
        ((p[0] - x[0]).powi(2) + (p[1] - x[1]).powi(2)).sqrt()
    };
    let n = 20_000;
    let h = (hi - lo) / n as f64;
    let mut best = (f64::INFINITY, lo);
    for k in 0..=n {
        let t = lo + k as f64 * h;
        let v = d(t);
        if v < best.0 {
            best = (v, t);
        }
    }
    let (mut a, mut b) = ((best.1 - h).max(lo), (best.1 + h).min(hi));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let (c1, c2) = (b - g * (b - a), a + g * (b - a));
        if d(c1) < d(c2) {
            b = c2;
        } else {
            a = c1;
        }
    }
    best.0.min(d(0.5 * (a + b)))
}

fn parabola(c: f64) -> impl Fn(f64) -> [f64; 2] {
    move |t| [t, c * t * t]
}

fn pt() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5f64..1.5, 2)
}

#[test]
fn halfspace_distance_closed_form() {
    let h = SetOracle::halfspace(vec![3.0, 4.0], 5.0).unwrap();
    assert_abs_diff_eq!(h.distance(&[0.0, 0.0]).unwrap(), 1.0, epsilon = 1e-12);
    assert_eq!(h.distance(&[3.0, 4.0]).unwrap(), 0.0);
    let p = h.project(&[0.0, 0.0]).unwrap();
    assert_abs_diff_eq!(p[0][0], 0.6, epsilon = 1e-12);
    assert_abs_diff_eq!(p[0][1], 0.8, epsilon = 1e-12);
}

#[test]
fn parabola_projection_from_the_axis_has_two_minimizers() {
    // From (0, 1) the nearest points of y = x² are (±1/√2, 1/2).
    let g = SetOracle::poly_graph([0.0, 0.0, 1.0]);
    let ps = g.project(&[0.0, 1.0]).unwrap();
    assert_eq!(ps.len(), 2);
    for p in &ps {
        assert_abs_diff_eq!(p[0].abs(), std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-9);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-9);
    }
    assert_abs_diff_eq!(g.distance(&[0.0, 1.0]).unwrap(), 0.75f64.sqrt(), epsilon = 1e-12);
}

#[test]
fn weighted_product_norm_examples() {
    let xs = vec![vec![3.0, 4.0], vec![0.0, 1.0]];
    assert_eq!(weighted_product_norm(&[1.0, 0.0], &xs, 0.1), 1.0);
    assert_eq!(weighted_product_norm(&[1.0, 0.0], &xs, 1.0), 5.0);
    assert_abs_diff_eq!(weighted_product_norm(&[0.0, 0.0], &xs, 0.5), 2.5, epsilon = 1e-15);
}

#[test]
fn presets_load_with_base_point_in_every_set() {
    for id in PRESETS {
        let c = preset(id).unwrap();
        assert!(c.contains(&c.base_point), "{id}");
        assert_eq!(intersection_distance(&c, &c.base_point).unwrap().value, 0.0);
    }
    assert!(preset("2.5").is_none());
}

#[test]
fn interior_detection() {
    let cfg = GeomCfg::default();
    assert!(!preset("2.1").unwrap().base_point_interior(&cfg));
    assert!(SetOracle::whole_space().interior_at(&[0.0, 0.0], &cfg));
    let h = SetOracle::halfspace(vec![0.0, 1.0], -1.0).unwrap();
    assert!(h.interior_at(&[0.0, 0.0], &cfg));
}

#[test]
fn base_point_outside_a_set_is_rejected() {
    let sets = vec![SetOracle::halfspace(vec![1.0, 0.0], 1.0).unwrap(), SetOracle::whole_space()];
    assert!(matches!(SetCollection::new(sets, vec![0.0, 0.0]), Err(Error::BasePoint { set: 0, .. })));
}

#[test]
fn spec_round_trip_matches_preset() {
    let text = r#"{
        "space": {"dim": 2},
        "sets": [
            {"kind": "halfspace", "normal": [0, 1], "offset": 0},
            {"kind": "poly_sublevel", "coeffs": [0, 0, 1], "side": "below"}
        ],
        "point": [0, 0]
    }"#;
    let c = parse_collection(text).unwrap();
    let p = preset("2.1").unwrap();
    for x in [[0.3, -0.2], [-1.0, 2.0], [0.0, 0.5]] {
        assert_eq!(intersection_distance(&c, &x).unwrap().value, intersection_distance(&p, &x).unwrap().value);
    }
    assert!(matches!(parse_collection("{"), Err(Error::Parse(_))));
}

#[test]
fn dimension_mismatch_is_reported() {
    let text = r#"{"space": {"dim": 3}, "sets": [{"kind": "halfspace", "normal": [0, 1], "offset": 0}, {"kind": "whole_space"}], "point": [0, 0, 0]}"#;
    assert!(parse_collection(text).is_err());
}

proptest! {
    #[test]
    fn parabola_distance_matches_sampled_curve(x in pt(), c in prop::sample::select(vec![1.0, -1.0, 0.5])) {
        let g = SetOracle::poly_graph([0.0, 0.0, c]);
        let want = curve_distance(&x, parabola(c), -4.0, 4.0);
        prop_assert!((g.distance(&x).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn projections_lie_in_the_set_and_realize_the_distance(x in pt(), k in 0usize..4) {
        let sets = [
            SetOracle::poly_graph([0.0, 0.0, 1.0]),
            SetOracle::poly_sublevel([0.0, 0.0, 1.0], Side::Below),
            SetOracle::halfspace(vec![1.0, -2.0], 0.3).unwrap(),
            preset("2.4").unwrap().sets[0].clone(),
        ];
        let s = &sets[k];
        let d = s.distance(&x).unwrap();
        let ps = s.project(&x).unwrap();
        prop_assert!(!ps.is_empty());
        for p in ps {
            prop_assert!(s.contains(&p) || s.distance(&p).unwrap() < 1e-9);
            prop_assert!((dist(&p, &x) - d).abs() < 1e-9);
        }
    }

    #[test]
    fn distance_is_one_lipschitz(x in pt(), y in pt(), k in 0usize..5) {
        let c = preset(PRESETS[k]).unwrap();
        for s in &c.sets {
            let (a, b) = (s.distance(&x).unwrap(), s.distance(&y).unwrap());
            prop_assert!((a - b).abs() <= dist(&x, &y) + 1e-9);
        }
    }

    #[test]
    fn intersection_distance_dominates_each_set(x in pt(), k in 0usize..5) {
        let c = preset(PRESETS[k]).unwrap();
        let d = intersection_distance(&c, &x).unwrap();
        prop_assert!(d.value + d.width >= c.max_distance(&x).unwrap() - 1e-9);
        for p in &d.points {
            prop_assert!(c.sets.iter().all(|s| s.distance(p).unwrap() < 1e-7));
        }
    }

    #[test]
    fn lens_intersection_matches_boundary_oracle(x in pt()) {
        // {0 ≤ y ≤ x²}: the nearest point of a point outside lies on the
        // axis or on the parabola, and must itself satisfy both inequalities.
        let c = preset("2.1").unwrap();
        let got = intersection_distance(&c, &x).unwrap().value;
        let want = if c.contains(&x) {
            0.0
        } else {
            let axis = curve_distance(&x, |t| [t, 0.0], -4.0, 4.0);
            let arc = curve_distance(&x, parabola(1.0), -4.0, 4.0);
            let feasible_arc = if x[1] < 0.0 { f64::INFINITY } else { arc };
            axis.min(feasible_arc)
        };
        prop_assert!((got - want).abs() < 1e-7, "got {got} want {want}");
    }

    #[test]
    fn union_distance_is_min_over_members(x in pt()) {
        let members = vec![
            SetOracle::halfspace(vec![-1.0, 0.0], 0.0).unwrap(),
            SetOracle::poly_sublevel([0.0, 0.0, 1.0], Side::Above),
            SetOracle::poly_graph([0.5, 0.0, -1.0]),
        ];
        let want = members.iter().map(|s| s.distance(&x).unwrap()).fold(f64::INFINITY, f64::min);
        let u = SetOracle::union(members).unwrap();
        prop_assert!((u.distance(&x).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn translate_identity(x in pt(), a in pt()) {
        let s = SetOracle::poly_sublevel([0.1, -0.3, 1.0], Side::Above);
        let t = s.translate(&a);
        let xa: Vec<f64> = x.iter().zip(&a).map(|(u, v)| u + v).collect();
        prop_assert!((t.distance(&x).unwrap() - s.distance(&xa).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_pair_distance_is_negative_part_norm(x in pt()) {
        let c = preset("orthogonal").unwrap();
        let want = (x[0].min(0.0).powi(2) + x[1].min(0.0).powi(2)).sqrt();
        prop_assert!((intersection_distance(&c, &x).unwrap().value - want).abs() < 1e-12);
    }
}
