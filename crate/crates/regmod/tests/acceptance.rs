//! End-to-end acceptance: one line per criterion, nonzero exit on any failure.

use regmod::cli::{run_reproduce, run_verify, Format, Report, Row, RunConfig, Status};
use regmod::dual::{proximal_normals, ProximalCfg};
use regmod::geometry::spec::{preset, PRESETS};
use regmod::geometry::SetOracle;
use std::f64::consts::FRAC_1_SQRT_2 as R2;
use std::time::Instant;

const SANDWICH_TOL: f64 = 0.02;

struct Outcome {
    ok: bool,
    detail: String,
}

fn near(v: f64, target: f64, rel: f64) -> bool {
    v.is_finite() && (v - target).abs() <= rel * target.abs()
}

fn row<'a>(r: &'a Report, kind: &str, method: &str, q: f64) -> &'a Row {
    r.rows
        .iter()
        .find(|x| x.kind == kind && x.method == method && x.q == q)
        .unwrap_or_else(|| panic!("no row {kind}/{method}/q={q} in {}", r.command))
}

/// Every listed condition must hold; failures are named in the detail.
fn all(checks: Vec<(String, bool)>) -> Outcome {
    let bad: Vec<String> = checks.iter().filter(|c| !c.1).map(|c| c.0.clone()).collect();
    let detail = if bad.is_empty() { format!("{} checks", checks.len()) } else { format!("failed: {}", bad.join("; ")) };
    Outcome { ok: bad.is_empty(), detail }
}

fn value(r: &Report, kind: &str, method: &str, q: f64) -> f64 {
    row(r, kind, method, q).value
}

fn verdict<'a>(r: &'a Report, kind: &str, q: f64) -> &'a str {
    &row(r, kind, "sampled_quotient", q).verdict
}

fn cusp_theta(rho: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let a = 0.5 * (lo + hi);
        if 4.0 * a.powi(6) + a.powi(4) < rho * rho {
            lo = a;
        } else {
            hi = a;
        }
    }
    let a = 0.5 * (lo + hi);
    2.0 * a.powi(3) + a
}

fn example_21(r: &Report) -> Outcome {
    let mut c = Vec::new();
    for rho in [0.2f64, 0.4, 0.6] {
        let v = value(r, "theta_rho", &format!("definition rho={rho}"), 1.0);
        c.push((format!("theta_{rho}={v}"), near(v, (1.0 + rho * rho).sqrt() - 1.0, 0.05)));
    }
    let semi = value(r, "semi", "sampled_quotient", 0.5);
    c.push((format!("semi(1/2)={semi}"), near(semi, R2, 0.10)));
    c.push(("semi(1) zero".into(), verdict(r, "semi", 1.0) == "zero"));
    let sub = value(r, "sub", "sampled_quotient", 1.0);
    c.push((format!("sub(1)={sub}"), near(sub, 1.0, 0.10)));
    let uni = value(r, "uniform", "sampled_quotient", 0.5);
    c.push((format!("uniform(1/2)={uni}"), near(uni, R2, 0.15)));
    all(c)
}

fn example_22(r: &Report) -> Outcome {
    let a: f64 = 0.1;
    let sphere = value(r, "sub", "sphere_quotient rho=0.102", 1.0);
    let sub = value(r, "sub", "sampled_quotient", 0.5);
    all(vec![
        ("sub(1) zero".into(), verdict(r, "sub", 1.0) == "zero"),
        (format!("sub(1/2)={sub}"), near(sub, 1.0, 0.10)),
        (format!("sphere={sphere}"), near(sphere, (4.0 * a.powi(6) + a.powi(4)).sqrt() / 0.102, 0.10)),
        ("semi(1/2) zero".into(), verdict(r, "semi", 0.5) == "zero"),
        ("semi(1) zero".into(), verdict(r, "semi", 1.0) == "zero"),
    ])
}

fn example_23(r: &Report) -> Outcome {
    let semi = value(r, "semi", "sampled_quotient", 1.0);
    all(vec![(format!("semi(1)={semi}"), semi >= 0.9), ("sub(1) zero".into(), verdict(r, "sub", 1.0) == "zero")])
}

fn example_24(r: &Report) -> Outcome {
    let mut c = Vec::new();
    for rho in [0.2, 0.4, 0.6] {
        let v = value(r, "theta_rho", &format!("definition rho={rho}"), 1.0);
        c.push((format!("theta_{rho}={v}"), near(v, cusp_theta(rho), 0.05)));
    }
    c.push(("semi(1/2) divergent".into(), verdict(r, "semi", 0.5) == "divergent"));
    c.push(("semi(1) divergent".into(), verdict(r, "semi", 1.0) == "divergent"));
    let two = value(r, "semi", "sampled_quotient", 2.0);
    c.push((format!("semi(2)={two}"), near(two, 1.0, 0.25)));
    c.push(("semi(2.5) zero".into(), verdict(r, "semi", 2.5) == "zero"));
    all(c)
}

fn orthogonal(r: &Report) -> Outcome {
    let mut c = Vec::new();
    for kind in ["semi", "sub", "uniform"] {
        let v = value(r, kind, "sampled_quotient", 1.0);
        c.push((format!("{kind}(1)={v}"), near(v, R2, 0.10)));
    }
    let d = value(r, "dual_uniform", "normal_cone_grid", 1.0);
    c.push((format!("dual_uniform={d}"), near(d, R2, 0.10)));
    all(c)
}

/// All verify rows of the given kinds passed, and at least one exists.
fn rows_pass(reports: &[(&str, &Report)], kinds: &[&str], filter: impl Fn(&Row) -> bool) -> Vec<(String, bool)> {
    let mut c = Vec::new();
    for (id, r) in reports {
        let hits: Vec<&Row> = r.rows.iter().filter(|x| kinds.contains(&x.kind.as_str()) && filter(x)).collect();
        c.push((format!("{id}: no {kinds:?} rows"), !hits.is_empty()));
        for h in hits {
            c.push((format!("{id}: {} {} q={}", h.kind, h.method, h.q), h.status == Some(Status::Pass)));
        }
    }
    c
}

fn main() {
    let started = Instant::now();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, o: Outcome| {
        println!("criterion {n:>2} {} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed += 1;
        }
    };

    let repro = |id: &str| run_reproduce(&RunConfig::preset(id)).expect("reproduce");
    report(1, "example 2.1 constants", example_21(&repro("2.1")));
    report(2, "example 2.2 constants", example_22(&repro("2.2")));
    report(3, "example 2.3 constants", example_23(&repro("2.3")));
    report(4, "example 2.4 constants", example_24(&repro("2.4")));
    report(5, "orthogonal halfspaces", orthogonal(&repro("orthogonal")));

    let verified: Vec<(&str, Report)> = PRESETS.iter().map(|id| (*id, run_verify(&RunConfig::preset(id)).expect("verify"))).collect();
    let refs: Vec<(&str, &Report)> = verified.iter().map(|(id, r)| (*id, r)).collect();

    let inequality = ["ordering", "union_form_agreement", "metric_inequality_holds", "metric_inequality_fails", "q_monotonicity"];
    let mut c = rows_pass(&refs, &["ordering", "union_form_agreement", "q_monotonicity"], |_| true);
    c.extend(rows_pass(&refs, &["metric_inequality_holds", "metric_inequality_fails"], |_| true));
    let none_failed = refs.iter().all(|(_, r)| r.rows.iter().filter(|x| inequality.contains(&x.kind.as_str())).all(|x| x.status == Some(Status::Pass)));
    c.push(("all inequality rows pass".into(), none_failed));
    report(6, "inequality suite", all(c));

    let boundary: Vec<(&str, &Report)> = refs[..3].to_vec();
    let mut c = rows_pass(&boundary, &["sub", "uniform"], |x| x.q == 1.5 && x.status.is_some());
    for (id, r) in &boundary {
        for kind in ["sub", "uniform"] {
            let z = r.rows.iter().any(|x| x.kind == kind && x.q == 1.5 && x.verdict == "zero");
            c.push((format!("{id}: {kind}(1.5) zero"), z));
        }
    }
    let cusp = preset("2.4").unwrap();
    let cfg = ProximalCfg::default();
    c.push(("2.4 first set has no proximal normal".into(), proximal_normals(&cusp.sets[0], &[0.0, 0.0], &cfg).unwrap().is_empty()));
    let h = SetOracle::halfspace(vec![0.0, 1.0], 0.0).unwrap();
    c.push(("halfspace has a proximal normal".into(), !proximal_normals(&h, &[0.0, 0.0], &cfg).unwrap().is_empty()));
    report(7, "collapse above q = 1", all(c));

    report(8, "dual/primal coherence", all(rows_pass(&refs, &["dual_coherence"], |_| true)));

    let mut c = rows_pass(&refs[..2], &["map_equality"], |_| true);
    for q in [0.5, 1.0] {
        let n = refs[..2].iter().map(|(_, r)| r.rows.iter().filter(|x| x.kind == "map_equality" && x.q == q).count()).sum::<usize>();
        c.push((format!("six map equalities at q={q}"), n == 6));
    }
    c.extend(rows_pass(&refs[..1], &["sandwich"], |_| true));
    let sq = refs[0].1.rows.iter().find(|x| x.kind == "sandwich" && x.collection == "map:square" && x.q == 0.5 && x.method.starts_with("sub"));
    let sq_ok = sq.is_some_and(|x| x.value >= 1.0 / (1.0 + 2f64.sqrt()) - SANDWICH_TOL && x.value <= R2 + SANDWICH_TOL);
    c.push((format!("square map sub(1/2) in sandwich: {:?}", sq.map(|x| x.value)), sq_ok));
    let id_rows = refs[0].1.rows.iter().filter(|x| x.kind == "sandwich" && x.collection == "map:identity").count();
    c.push(("identity sandwiches present".into(), id_rows > 0));
    report(9, "map/collection bridge", all(c));

    let again = run_verify(&RunConfig::preset(PRESETS[0])).expect("verify");
    let (a, b) = (verified[0].1.render(Format::Json), again.render(Format::Json));
    report(10, "determinism", Outcome { ok: a == b, detail: format!("{} bytes, identical: {}", a.len(), a == b) });

    println!("acceptance: {} of 10 criteria passed in {:.1}s", 10 - failed, started.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
