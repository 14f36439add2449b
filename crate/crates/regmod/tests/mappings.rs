use proptest::prelude::*;
use regmod::geometry::spec::preset;
use regmod::geometry::SetOracle;
use regmod::mappings::{bridge_check, collection_to_map, map_modulus, map_to_collection, SetValuedMap};
use regmod::moduli::{modulus, ModulusKind, RadiusSchedule, Verdict};
use regmod::Error;

fn quick() -> RadiusSchedule {
    RadiusSchedule { samples_per_radius: 600, ..RadiusSchedule::default() }
}

fn eval(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * t + a)
}

/// `min |x − t|` over roots of `p(t) = y` in `[-10, 10]`, found by sign
/// changes on a fine grid and bisection, plus near-tangent grid minima.
fn inverse_oracle(c: &[f64], x: f64, y: f64) -> f64 {
    let f = |t: f64| eval(c, t) - y;
    let n = 200_000;
    let h = 20.0 / n as f64;
    let mut best = f64::INFINITY;
    let mut prev = (-10.0, f(-10.0));
    for k in 1..=n {
        let t = -10.0 + k as f64 * h;
        let v = f(t);
        if v == 0.0 {
            best = best.min((x - t).abs());
        } else if prev.1 * v < 0.0 {
            let (mut a, mut b) = (prev.0, t);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if f(a) * f(m) <= 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            best = best.min((x - 0.5 * (a + b)).abs());
        }
        prev = (t, v);
    }
    best
}

#[test]
fn identity_constants_are_one() {
    let f = SetValuedMap::identity();
    for kind in [ModulusKind::MapSemi, ModulusKind::MapSub, ModulusKind::MapReg] {
        let e = map_modulus(&f, 1.0, kind, &quick()).unwrap();
        assert_eq!(e.verdict, Verdict::Positive, "{}", kind.name());
        assert!((e.value - 1.0).abs() < 1e-6);
    }
}

#[test]
fn square_map_orders() {
    let f = SetValuedMap::poly(vec![0.0, 0.0, 1.0], 0.0).unwrap();
    let sub = map_modulus(&f, 0.5, ModulusKind::MapSub, &quick()).unwrap();
    assert!((sub.value - 1.0).abs() < 1e-6);
    assert_eq!(map_modulus(&f, 1.0, ModulusKind::MapSub, &quick()).unwrap().verdict, Verdict::Zero);
    assert_eq!(map_modulus(&f, 0.5, ModulusKind::MapSemi, &quick()).unwrap().verdict, Verdict::Zero);
}

#[test]
fn graph_collection_sandwiches() {
    let sq = SetValuedMap::poly(vec![0.0, 0.0, 1.0], 0.0).unwrap();
    let r = bridge_check(&sq, 0.5, &quick()).unwrap();
    assert!(r.pass(), "{r:?}");
    let sub = &r.rows[1];
    assert!(sub.lower <= 0.4143 && sub.upper >= std::f64::consts::FRAC_1_SQRT_2 - 1e-4);
    assert!(bridge_check(&SetValuedMap::identity(), 1.0, &quick()).unwrap().pass());
}

#[test]
fn graph_oracle_map_of_the_diagonal() {
    // gr F = {(x, y) : x = y} as two halfspaces in ℝ².
    let graph = SetOracle::intersection(vec![
        SetOracle::halfspace(vec![1.0, -1.0], 0.0).unwrap(),
        SetOracle::halfspace(vec![-1.0, 1.0], 0.0).unwrap(),
    ])
    .unwrap();
    let f = SetValuedMap::from_graph(graph.clone(), 1, vec![0.0], vec![0.0]).unwrap();
    assert!((f.forward_distance(&[0.3], &[-0.2]).unwrap() - 0.5).abs() < 1e-9);
    assert!((f.inverse_distance(&[0.3], &[-0.2]).unwrap() - 0.5).abs() < 1e-9);
    assert!(f.on_graph(&[0.7], &[0.7]).unwrap());
    assert!(matches!(SetValuedMap::from_graph(graph, 1, vec![0.0], vec![1.0]), Err(Error::BasePoint { .. })));
    let c = map_to_collection(&f).unwrap();
    assert_eq!(c.dim(), 2);
}

#[test]
fn product_maps_have_no_graph_collection() {
    let f = collection_to_map(&preset("2.1").unwrap());
    assert!(matches!(map_to_collection(&f), Err(Error::NoAnalyticOracle(_))));
}

#[test]
fn product_map_constants_equal_collection_constants() {
    let c = preset("2.2").unwrap();
    let f = collection_to_map(&c);
    let s = quick();
    for (ck, mk) in [(ModulusKind::Semi, ModulusKind::MapSemi), (ModulusKind::Sub, ModulusKind::MapSub)] {
        let a = modulus(&c, 0.5, ck, &s).unwrap();
        let b = map_modulus(&f, 0.5, mk, &s).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert!((a.value - b.value).abs() <= a.uncertainty + b.uncertainty + 1e-3);
    }
}

proptest! {
    #[test]
    fn poly_inverse_distance_matches_root_scan(c in prop::collection::vec(-2.0f64..2.0, 2..5), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let f = SetValuedMap::poly(c.clone(), 0.0).unwrap();
        let got = f.inverse_distance(&[x], &[y]).unwrap();
        let want = inverse_oracle(&c, x, y);
        if want.is_finite() {
            prop_assert!((got - want).abs() < 1e-6, "got {got} want {want}");
        } else {
            // No sign change on the grid: either no root or a tangency.
            prop_assert!(got.is_infinite() || (eval(&c, x - got) - y).abs() < 1e-6 || (eval(&c, x + got) - y).abs() < 1e-6);
        }
        prop_assert!((f.forward_distance(&[x], &[y]).unwrap() - (y - eval(&c, x)).abs()).abs() < 1e-12);
    }

    #[test]
    fn product_map_inverse_is_translated_intersection(x in prop::collection::vec(-1.0f64..1.0, 2), y in prop::collection::vec(-1.0f64..1.0, 4)) {
        // F⁻¹(y) = {x : x_2 ≥ −y_{1,2}, x_1 ≥ −y_{2,1}} for {y ≥ 0}, {x ≥ 0}.
        let f = collection_to_map(&preset("orthogonal").unwrap());
        let want = (-y[2] - x[0]).max(0.0).hypot((-y[1] - x[1]).max(0.0));
        prop_assert!((f.inverse_distance(&x, &y).unwrap() - want).abs() < 1e-12);
        let fwd = (-(x[1] + y[1])).max(0.0).max((-(x[0] + y[2])).max(0.0));
        prop_assert!((f.forward_distance(&x, &y).unwrap() - fwd).abs() < 1e-12);
    }

    #[test]
    fn range_distance_is_max_over_blocks(a in prop::collection::vec(-1.0f64..1.0, 4), b in prop::collection::vec(-1.0f64..1.0, 4)) {
        let f = collection_to_map(&preset("2.1").unwrap());
        let d0 = (a[0] - b[0]).hypot(a[1] - b[1]);
        let d1 = (a[2] - b[2]).hypot(a[3] - b[3]);
        prop_assert!((f.range_distance(&a, &b) - d0.max(d1)).abs() < 1e-15);
    }
}
