//! Cross-checks between estimators that must agree whatever the collection.

use super::{dual_subreg_row, dual_uniform_row, load, stamp, timed, Report, Row, RunConfig, Status};
use crate::dual::{proximal_normals, ProximalCfg};
use crate::error::{Error, Result};
use crate::geometry::{GeomCfg, SetCollection};
use crate::mappings::{bridge_check, collection_to_map, map_modulus, SetValuedMap};
use crate::moduli::{check_metric_inequality, modulus, theta_rho, ModulusEstimate, ModulusKind, RadiusSchedule, ThetaMethod, Verdict};
use std::collections::BTreeMap;

/// Numerical slack on comparisons between independently sampled values.
const SLACK: f64 = 1e-3;
/// Relative sampling noise allowed in the q-monotonicity comparison.
const REL_NOISE: f64 = 0.05;

const PRIMAL: [ModulusKind; 3] = [ModulusKind::Semi, ModulusKind::Sub, ModulusKind::Uniform];

struct Ctx<'a> {
    name: &'a str,
    coll: &'a SetCollection,
    s: &'a RadiusSchedule,
    cache: BTreeMap<(u8, u64), ModulusEstimate>,
}

impl Ctx<'_> {
    fn est(&mut self, kind: ModulusKind, q: f64) -> Result<ModulusEstimate> {
        let key = (kind as u8, q.to_bits());
        if let Some(e) = self.cache.get(&key) {
            return Ok(e.clone());
        }
        let e = modulus(self.coll, q, kind, self.s)?;
        self.cache.insert(key, e.clone());
        Ok(e)
    }

    fn row(&self, q: f64, check: &str, method: &str, value: f64, verdict: &str, unc: f64) -> Row {
        Row::new(self.name, q, check, method, value, verdict, unc)
    }
}

/// `θ̂ ≤ min(θ, ζ)` up to the uncertainties involved.
fn ordering(c: &mut Ctx, q: f64) -> Result<Row> {
    let (t, z, u) = (c.est(ModulusKind::Semi, q)?, c.est(ModulusKind::Sub, q)?, c.est(ModulusKind::Uniform, q)?);
    let bound = t.upper().min(z.upper());
    let ok = u.value <= bound + u.uncertainty + SLACK;
    let r = c.row(q, "ordering", "uniform<=min(semi,sub)", u.value, u.verdict.name(), u.uncertainty);
    Ok(r.check(format!("<= {}", super::fmt_num(bound)), Status::of(ok)))
}

/// The two ways of computing `θ_ρ` agree.
fn union_form(c: &Ctx, rho: f64) -> Result<(Row, f64)> {
    let a = theta_rho(c.coll, rho, ThetaMethod::Definition, c.s)?;
    let b = theta_rho(c.coll, rho, ThetaMethod::UnionForm, c.s)?;
    let ok = (a.value.is_infinite() && b.value.is_infinite()) || (a.value - b.value).abs() <= a.uncertainty + b.uncertainty + SLACK * (1.0 + a.value);
    let r = c.row(1.0, "union_form_agreement", &format!("rho={rho}"), b.value, "measured", b.uncertainty);
    Ok((r.check(format!("definition {}", super::fmt_num(a.value)), Status::of(ok)), a.value))
}

/// Start of the trailing classification window.
fn trailing_radius(e: &ModulusEstimate) -> f64 {
    let n = e.trace.len();
    e.trace[n - n.div_ceil(3)].rho
}

/// The metric inequality holds at half the estimate and fails just above it.
fn metric(c: &mut Ctx, kind: ModulusKind, q: f64) -> Result<Vec<Row>> {
    let e = c.est(kind, q)?;
    let mut rows = Vec::new();
    let mut run = |gamma: f64, delta: f64, want: bool, label: &str| -> Result<()> {
        let r = check_metric_inequality(c.coll, q, kind, gamma, delta, c.s)?;
        let row = c.row(q, label, &format!("{} gamma={} delta={}", kind.name(), super::fmt_num(gamma), super::fmt_num(delta)), r.worst_ratio, e.verdict.name(), e.uncertainty);
        rows.push(row.check(if want { "pass" } else { "fail" }, Status::of(r.pass == want)));
        Ok(())
    };
    match e.verdict {
        Verdict::Inconclusive => {}
        Verdict::Zero => run((2.0 * e.uncertainty).max(1e-6), c.s.rho0, false, "metric_inequality_fails")?,
        Verdict::Positive if e.value.is_infinite() => run(1.0, c.s.rho0, true, "metric_inequality_holds")?,
        Verdict::Positive => {
            run(0.5 * e.lower(), trailing_radius(&e), true, "metric_inequality_holds")?;
            run(e.upper() * (1.0 + 1e-6) + 1e-9, c.s.rho0, false, "metric_inequality_fails")?;
        }
        Verdict::Divergent => {
            let n = e.trace.len();
            let low = e.trace[n - n.div_ceil(3)..].iter().map(|t| t.quotient).fold(f64::INFINITY, f64::min);
            run(0.5 * low, trailing_radius(&e), true, "metric_inequality_holds")?;
        }
    }
    Ok(rows)
}

/// Trace quotients do not grow with `q` while the radii stay below 1.
fn q_monotone(c: &mut Ctx, kind: ModulusKind, thetas: &[(f64, f64)]) -> Result<Row> {
    let qs = [0.5, 1.0, 1.5];
    if c.s.rho0 > 1.0 {
        return Ok(c.row(1.5, "q_monotonicity", kind.name(), f64::NAN, "skipped", 0.0).check("rho0 <= 1", Status::Skip));
    }
    let es: Vec<ModulusEstimate> = qs.iter().map(|&q| c.est(kind, q)).collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for w in es.windows(2) {
        for (lo, hi) in w[0].trace.iter().zip(&w[1].trace) {
            if hi.quotient.is_finite() {
                worst = worst.max(hi.quotient - lo.quotient * (1.0 + REL_NOISE) - SLACK);
            }
        }
    }
    for &(rho, th) in thetas {
        if th <= 1.0 {
            let v: Vec<f64> = qs.iter().map(|&q| th.powf(q) / rho).collect();
            worst = worst.max(v[1] - v[0]).max(v[2] - v[1]);
        }
    }
    Ok(c.row(1.5, "q_monotonicity", kind.name(), worst, "measured", 0.0).check("<= 0", Status::of(worst <= 0.0)))
}

/// Away from interior points, `q > 1` leaves no sub- or uniform regularity,
/// and semiregularity needs a set without proximal normals at `x̄`.
fn collapse(c: &mut Ctx) -> Result<Vec<Row>> {
    let geom = GeomCfg::default();
    if c.coll.base_point_interior(&geom) {
        return Ok(vec![c.row(1.5, "collapse", "interior", f64::INFINITY, "positive", 0.0).check("vacuous", Status::Pass)]);
    }
    let mut rows = Vec::new();
    for kind in [ModulusKind::Sub, ModulusKind::Uniform] {
        let e = c.est(kind, 1.5)?;
        rows.push(Row::from_estimate(c.name, &e, "sampled_quotient").check("zero", Status::of(e.verdict == Verdict::Zero)));
    }
    let mut missing = 0usize;
    for s in &c.coll.sets {
        if !s.interior_at(&c.coll.base_point, &geom) && proximal_normals(s, &c.coll.base_point, &ProximalCfg::default())?.is_empty() {
            missing += 1;
        }
    }
    let semi = c.est(ModulusKind::Semi, 1.5)?;
    let ok = !semi.is_positive() || missing > 0;
    let r = c.row(1.5, "proximal_obstruction", "boundary sets without proximal normals", missing as f64, semi.verdict.name(), 0.0);
    rows.push(r.check("> 0 if semi positive", Status::of(ok)));
    Ok(rows)
}

/// Sampled normal-cone criteria against the primal verdicts.
fn dual(c: &mut Ctx, qs: &[f64]) -> Result<Vec<Row>> {
    if c.coll.dim() != 2 {
        return Ok(vec![c.row(1.0, "dual_coherence", "planar only", f64::NAN, "skipped", 0.0).check("dim = 2", Status::Skip)]);
    }
    let mut rows = Vec::new();
    let d = dual_uniform_row(c.name, c.coll, c.s)?;
    let u = c.est(ModulusKind::Uniform, 1.0)?;
    let ok = (d.verdict == "positive") == u.is_positive();
    let mut r = d.check(format!("uniform {}", u.verdict.name()), Status::of(ok));
    r.kind = "dual_coherence".into();
    rows.push(r);
    for &q in qs.iter().filter(|&&q| q <= 1.0) {
        let d = dual_subreg_row(c.name, c.coll, q, c.s)?;
        let z = c.est(ModulusKind::Sub, q)?;
        let ok = d.verdict != "positive" || z.is_positive();
        let mut r = d.check(format!("sub {}", z.verdict.name()), Status::of(ok));
        r.kind = "dual_chain".into();
        rows.push(r);
    }
    Ok(rows)
}

/// Constants of the collection equal those of its product-of-translates map.
fn map_equality(c: &mut Ctx, q: f64) -> Result<Vec<Row>> {
    let map = collection_to_map(c.coll);
    let mut rows = Vec::new();
    for (ck, mk) in PRIMAL.into_iter().zip([ModulusKind::MapSemi, ModulusKind::MapSub, ModulusKind::MapReg]) {
        let a = c.est(ck, q)?;
        let b = map_modulus(&map, q, mk, c.s)?;
        let close = a.value == b.value || (a.value - b.value).abs() <= a.uncertainty + b.uncertainty + SLACK;
        let ok = a.verdict == b.verdict && close;
        let r = c.row(q, "map_equality", &format!("{} vs {}", ck.name(), mk.name()), b.value, b.verdict.name(), b.uncertainty);
        rows.push(r.check(format!("{} {}", a.verdict.name(), super::fmt_num(a.value)), Status::of(ok)));
    }
    Ok(rows)
}

/// Sandwich bounds between map constants and graph-collection constants for
/// `x ↦ x²` and the identity.
fn sandwich(q: f64, s: &RadiusSchedule) -> Result<Vec<Row>> {
    let maps = [("map:square", SetValuedMap::poly(vec![0.0, 0.0, 1.0], 0.0)?), ("map:identity", SetValuedMap::identity())];
    let mut rows = Vec::new();
    for (name, f) in maps {
        for r in bridge_check(&f, q, s)?.rows {
            let c = &r.collection;
            let row = Row::new(name, q, "sandwich", &format!("{} vs {}", c.kind.name(), r.map.kind.name()), c.value, c.verdict.name(), c.uncertainty);
            rows.push(row.check(format!("[{}, {}]", super::fmt_num(r.lower), super::fmt_num(r.upper)), Status::of(r.pass)));
        }
    }
    Ok(rows)
}

/// Runs every cross-check on the collection.
pub fn run_verify(cfg: &RunConfig) -> Result<Report> {
    if cfg.qs.iter().any(|&q| !(q > 0.0)) {
        return Err(Error::Invalid("q must be positive".into()));
    }
    let (name, coll) = load(&cfg.source)?;
    let s = &cfg.schedule;
    let mut c = Ctx { name: &name, coll: &coll, s, cache: BTreeMap::new() };
    let mut rows = Vec::new();
    let seed = s.seed;
    let push = |rows: &mut Vec<Row>, out: Result<Vec<Row>>, ms: u64| -> Result<()> {
        rows.extend(stamp(out?, ms, seed));
        Ok(())
    };
    let on = cfg.timings;
    for &q in &cfg.qs {
        let (out, ms) = timed(on, || ordering(&mut c, q).map(|r| vec![r]));
        push(&mut rows, out, ms)?;
    }
    let mut thetas = Vec::new();
    for rho in [0.2, 0.4, 0.6] {
        let (out, ms) = timed(on, || union_form(&c, rho));
        let (r, th) = out?;
        thetas.push((rho, th));
        push(&mut rows, Ok(vec![r]), ms)?;
    }
    for &q in &cfg.qs {
        for kind in PRIMAL {
            let (out, ms) = timed(on, || metric(&mut c, kind, q));
            push(&mut rows, out, ms)?;
        }
    }
    for kind in PRIMAL {
        let (out, ms) = timed(on, || q_monotone(&mut c, kind, &thetas).map(|r| vec![r]));
        push(&mut rows, out, ms)?;
    }
    let (out, ms) = timed(on, || collapse(&mut c));
    push(&mut rows, out, ms)?;
    let (out, ms) = timed(on, || dual(&mut c, &cfg.qs));
    push(&mut rows, out, ms)?;
    for &q in &cfg.qs {
        let (out, ms) = timed(on, || map_equality(&mut c, q));
        push(&mut rows, out, ms)?;
    }
    for &q in &cfg.qs {
        let (out, ms) = timed(on, || sandwich(q, s));
        push(&mut rows, out, ms)?;
    }
    Ok(Report::new("verify", cfg, rows))
}
