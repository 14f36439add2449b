use proptest::prelude::*;
use regmod::dual::{
    dual_modulus, duality_map_check, duality_map_sample, frechet_normal_cone, proximal_normals, ConeType, DualCfg, DualKind, DualRadii,
    ProximalCfg,
};
use regmod::geometry::spec::preset;
use regmod::geometry::{SetCollection, SetOracle, Side};
use regmod::Error;
use std::f64::consts::FRAC_1_SQRT_2;

/// `min_{w ∈ [0,1]} ‖w·u + (1 − w)·v‖` by a fine grid over `w`.
fn pair_min_grid(u: [f64; 2], v: [f64; 2]) -> f64 {
    (0..=100_000)
        .map(|k| {
            let w = k as f64 / 100_000.0;
            (w * u[0] + (1.0 - w) * v[0]).hypot(w * u[1] + (1.0 - w) * v[1])
        })
        .fold(f64::INFINITY, f64::min)
}

fn dual_cfg() -> DualCfg {
    DualCfg { samples: 100, ..DualCfg::default() }
}

#[test]
fn duality_map_rejects_bad_functionals() {
    let xs = vec![vec![3.0, 4.0], vec![0.0, 1.0]];
    assert!(duality_map_check(&xs, &[vec![0.6, 0.8], vec![0.0, 0.0]]));
    // Mass on a non-maximal component.
    assert!(!duality_map_check(&xs, &[vec![0.0, 0.0], vec![0.0, 1.0]]));
    // Misaligned.
    assert!(!duality_map_check(&xs, &[vec![0.8, 0.6], vec![0.0, 0.0]]));
    // Mass not one.
    assert!(!duality_map_check(&xs, &[vec![0.3, 0.4], vec![0.0, 0.0]]));
    assert_eq!(duality_map_sample(&[vec![0.0], vec![0.0]]), Err(Error::ZeroDualityInput));
}

#[test]
fn tied_components_share_the_mass() {
    let xs = vec![vec![1.0, 0.0], vec![0.0, -1.0]];
    let out = duality_map_sample(&xs).unwrap();
    assert_eq!(out.len(), 3);
    assert_eq!(out[2], vec![vec![0.5, 0.0], vec![0.0, -0.5]]);
}

#[test]
fn normal_cones_of_basic_sets() {
    let o = [0.0, 0.0];
    let h = frechet_normal_cone(&SetOracle::halfspace(vec![0.0, 1.0], 0.0).unwrap(), &o).unwrap();
    assert_eq!(h.tag, ConeType::Ray);
    assert!(h.contains(&[0.0, -2.0]) && !h.contains(&[0.1, -1.0]));
    let g = frechet_normal_cone(&SetOracle::poly_graph([0.0, 0.0, 1.0]), &o).unwrap();
    assert_eq!(g.tag, ConeType::Line);
    assert!(g.contains(&[0.0, 1.0]) && g.contains(&[0.0, -1.0]));
    let below = frechet_normal_cone(&SetOracle::poly_sublevel([0.0, 0.0, 1.0], Side::Below), &o).unwrap();
    assert_eq!(below.tag, ConeType::Ray);
    assert!(below.contains(&[0.0, 1.0]));
    let inner = frechet_normal_cone(&SetOracle::halfspace(vec![0.0, 1.0], -1.0).unwrap(), &o).unwrap();
    assert_eq!(inner.tag, ConeType::Trivial);
    assert!(matches!(frechet_normal_cone(&SetOracle::halfspace(vec![0.0, 1.0], 1.0).unwrap(), &o), Err(Error::NotInSet(_))));
}

#[test]
fn cusp_complement_has_no_normals_at_the_tip() {
    let c = preset("2.4").unwrap();
    let o = [0.0, 0.0];
    assert_eq!(frechet_normal_cone(&c.sets[0], &o).unwrap().tag, ConeType::Trivial);
    assert!(proximal_normals(&c.sets[0], &o, &ProximalCfg::default()).unwrap().is_empty());
    let h = SetOracle::halfspace(vec![0.0, 1.0], 0.0).unwrap();
    let p = proximal_normals(&h, &o, &ProximalCfg::default()).unwrap();
    assert!(!p.is_empty());
    assert!(p.iter().all(|n| n.direction[0].abs() < 1e-9 && n.direction[1] < 0.0));
}

#[test]
fn uniform_criterion_on_orthogonal_pair_matches_grid() {
    let c = preset("orthogonal").unwrap();
    let oracle = pair_min_grid([0.0, -1.0], [-1.0, 0.0]);
    assert!((oracle - FRAC_1_SQRT_2).abs() < 1e-9);
    let r = dual_modulus(&c, DualKind::UniformQ1, 1.0, DualRadii::ball(0.2), &dual_cfg()).unwrap();
    assert!((r.infimum_estimate - oracle).abs() < 1e-6, "{}", r.infimum_estimate);
    assert!(r.positive());
}

#[test]
fn uniform_criterion_verdicts() {
    // Opposite normals cancel on the lens and the parabolas; the cusp pair
    // has a whole-space member and keeps norm one.
    for (id, want) in [("2.1", 0.0), ("2.2", 0.0), ("2.3", 0.0), ("2.4", 1.0)] {
        let c = preset(id).unwrap();
        let r = dual_modulus(&c, DualKind::UniformQ1, 1.0, DualRadii::ball(0.2), &dual_cfg()).unwrap();
        assert!((r.infimum_estimate - want).abs() < 1e-6, "{id}: {}", r.infimum_estimate);
    }
}

#[test]
fn subreg_criterion_scales() {
    let c = preset("2.2").unwrap();
    let r = dual_modulus(&c, DualKind::SubregQ, 0.5, DualRadii::perturbed(0.05, 5e-5), &dual_cfg()).unwrap();
    assert!(r.positive());
    let r = dual_modulus(&c, DualKind::SubregQ, 1.0, DualRadii::perturbed(0.05, 5e-5), &dual_cfg()).unwrap();
    assert!(!r.positive());
    assert!(dual_modulus(&c, DualKind::SubregQ, 1.5, DualRadii::perturbed(0.05, 5e-5), &dual_cfg()).is_err());
}

#[test]
fn dual_needs_the_plane() {
    let sets = vec![SetOracle::halfspace(vec![0.0, 0.0, 1.0], 0.0).unwrap(), SetOracle::halfspace(vec![1.0, 0.0, 0.0], 0.0).unwrap()];
    let c = SetCollection::new(sets, vec![0.0; 3]).unwrap();
    let r = dual_modulus(&c, DualKind::UniformQ1, 1.0, DualRadii::ball(0.2), &dual_cfg());
    assert!(matches!(r, Err(Error::NoAnalyticOracle(_))));
}

fn block() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 2)
}

proptest! {
    #[test]
    fn sampled_duality_elements_pass_the_check(xs in prop::collection::vec(block(), 2..5), tie in any::<bool>()) {
        let mut xs = xs;
        if tie {
            let n0 = xs[0][0].hypot(xs[0][1]);
            let n1 = xs[1][0].hypot(xs[1][1]);
            if n1 > 0.0 {
                xs[1] = xs[1].iter().map(|v| v * n0 / n1).collect();
            }
        }
        prop_assume!(xs.iter().any(|x| x[0] != 0.0 || x[1] != 0.0));
        for s in duality_map_sample(&xs).unwrap() {
            prop_assert!(duality_map_check(&xs, &s));
            let pairing: f64 = xs.iter().zip(&s).map(|(x, v)| x[0] * v[0] + x[1] * v[1]).sum();
            let top = xs.iter().map(|x| x[0].hypot(x[1])).fold(0.0, f64::max);
            prop_assert!((pairing - top).abs() < 1e-9 * (1.0 + top));
        }
    }

    #[test]
    fn cone_directions_lie_in_the_cone(u in -1.5f64..1.5, k in 0usize..3) {
        let sets = [
            SetOracle::poly_graph([0.0, 0.0, 1.0]),
            SetOracle::poly_sublevel([0.0, 0.0, -1.0], Side::Above),
            preset("2.3").unwrap().sets[0].clone(),
        ];
        let s = &sets[k];
        let p = s.project(&[u, 0.3]).unwrap().swap_remove(0);
        let cone = frechet_normal_cone(s, &p).unwrap();
        for d in cone.directions(5.0) {
            prop_assert!(cone.contains(&d));
        }
    }
}
