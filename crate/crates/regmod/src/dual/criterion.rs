//! Sampled infima of `‖Σ x_i*‖` over normal configurations.
//!
//! `uniform_q1`: boundary points `ω_i` near `x̄`, normals `x_i*` from the
//! analytic cones with `Σ‖x_i*‖ = 1`. `subreg_q`: points `x` near `x̄` with
//! nearest or stationary boundary points `ω_i`, perturbed normals
//! `x_i* ∈ N(ω_i) + ρB*` aligned with `x − ω_i` up to `ε`, zero on
//! non-maximal components, and `Σ‖x_i*‖ = q‖v̂‖^{q−1}`.

use super::{frechet_normal_cone, NormalCone};
use crate::error::{Error, Result};
use crate::geometry::{add, dist, norm, SetCollection, SetOracle};
use crate::moduli::sampler::Domain;
use crate::moduli::{RadiusSchedule, ZERO_FLOOR};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Configurations need `‖v̂‖ > EPS_RATIO·ε`.
const EPS_RATIO: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualKind {
    UniformQ1,
    SubregQ,
}

impl DualKind {
    pub fn name(self) -> &'static str {
        match self {
            DualKind::UniformQ1 => "uniform_q1",
            DualKind::SubregQ => "subreg_q",
        }
    }
}

/// `delta` bounds `‖ω_i − x̄‖` for `uniform_q1`; `rho` and `eps` are the
/// scales of `subreg_q`, where `‖x − x̄‖ < ρ` as well.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualRadii {
    pub delta: f64,
    pub rho: f64,
    pub eps: f64,
}

impl DualRadii {
    pub fn ball(delta: f64) -> Self {
        Self { delta, rho: delta, eps: 0.0 }
    }

    pub fn perturbed(rho: f64, eps: f64) -> Self {
        Self { delta: rho, rho, eps }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualCfg {
    /// Simplex weights are multiples of `1/weight_steps`.
    pub weight_steps: usize,
    pub angle_step_deg: f64,
    /// Geometric levels of boundary samples towards `x̄`.
    pub levels: usize,
    /// Points `x` per shell for `subreg_q`.
    pub samples: usize,
    pub seed: u64,
}

impl Default for DualCfg {
    fn default() -> Self {
        Self { weight_steps: 50, angle_step_deg: 1.0, levels: 20, samples: 400, seed: 42 }
    }
}

impl DualCfg {
    pub fn from_schedule(s: &RadiusSchedule) -> Self {
        Self { samples: (s.samples_per_radius / 5).max(50), seed: s.seed, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualCriterionReport {
    pub kind: DualKind,
    pub q: f64,
    pub radii: DualRadii,
    /// `+∞` when no admissible configuration was sampled.
    pub infimum_estimate: f64,
    /// `subreg_q`: `x` then `ω_1..ω_m`; `uniform_q1`: `ω_1..ω_m`.
    pub witness_points: Vec<Vec<f64>>,
    pub witness_normals: Vec<Vec<f64>>,
    pub samples: usize,
    pub notes: Vec<String>,
}

impl DualCriterionReport {
    /// The sampled infimum clears the zero floor.
    pub fn positive(&self) -> bool {
        self.infimum_estimate > ZERO_FLOOR
    }
}

/// A candidate unit direction with its distance to the normal cone.
#[derive(Clone, Debug)]
struct Dir {
    angle: f64,
    v: Vec<f64>,
    gap: f64,
}

fn dir(v: Vec<f64>, cone: &NormalCone) -> Dir {
    let angle = if v.len() == 2 { v[1].atan2(v[0]).rem_euclid(TAU) } else { 0.0 };
    let gap = cone.distance(&v);
    Dir { angle, v, gap }
}

/// Directions usable at weight `w`: `dist(w·e, N) ≤ slack`.
fn usable(dirs: &[Dir], w: f64, slack: f64) -> Vec<&Dir> {
    dirs.iter().filter(|d| d.gap * w <= slack + 1e-12).collect()
}

fn combine(ws: &[f64], es: &[&[f64]]) -> Vec<f64> {
    let mut s = vec![0.0; es[0].len()];
    for (w, e) in ws.iter().zip(es) {
        for (a, b) in s.iter_mut().zip(e.iter()) {
            *a += w * b;
        }
    }
    s
}

/// `min ‖a e_1 + b e_2‖` over the two direction lists.
fn pair_min<'a>(a: f64, b: f64, e1: &[&'a Dir], e2: &[&'a Dir]) -> (f64, &'a Dir, &'a Dir) {
    let planar = e1[0].v.len() == 2;
    let value = |d1: &Dir, d2: &Dir| norm(&combine(&[a, b], &[&d1.v, &d2.v]));
    if !planar || e1.len() * e2.len() <= 256 {
        let mut best = (f64::INFINITY, e1[0], e2[0]);
        for d1 in e1 {
            for d2 in e2 {
                let v = value(d1, d2);
                if v < best.0 {
                    best = (v, d1, d2);
                }
            }
        }
        return best;
    }
    let mut sorted: Vec<&Dir> = e2.to_vec();
    sorted.sort_by(|x, y| x.angle.partial_cmp(&y.angle).unwrap());
    let n = sorted.len();
    let mut best = (f64::INFINITY, e1[0], e2[0]);
    for d1 in e1 {
        let target = (d1.angle + PI).rem_euclid(TAU);
        let k = sorted.partition_point(|d| d.angle < target);
        for j in [k % n, (k + n - 1) % n] {
            let v = value(d1, sorted[j]);
            if v < best.0 {
                best = (v, d1, sorted[j]);
            }
        }
    }
    best
}

/// Weight vectors on the simplex grid with `steps` subdivisions.
fn simplex(k: usize, steps: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![steps]];
    }
    let mut out = Vec::new();
    for first in 0..=steps {
        for mut rest in simplex(k - 1, steps - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `min ‖Σ w_i c e_i‖` over simplex weights `w` and usable directions.
/// Components with an empty list must carry zero weight.
fn inner_min(comps: &[Vec<Dir>], c: f64, slack: f64, steps: usize) -> Option<(f64, Vec<Vec<f64>>)> {
    let k = comps.len();
    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    for grid in simplex(k, steps) {
        let ws: Vec<f64> = grid.iter().map(|&g| g as f64 / steps as f64 * c).collect();
        let on: Vec<usize> = (0..k).filter(|&i| ws[i] > 0.0).collect();
        let lists: Vec<Vec<&Dir>> = on.iter().map(|&i| usable(&comps[i], ws[i], slack)).collect();
        if lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let (value, chosen): (f64, Vec<&Dir>) = match on.len() {
            1 => (ws[on[0]], vec![lists[0][0]]),
            2 => {
                let (v, d1, d2) = pair_min(ws[on[0]], ws[on[1]], &lists[0], &lists[1]);
                (v, vec![d1, d2])
            }
            _ => {
                // Coordinate descent from every direction of the first component.
                let mut local: Option<(f64, Vec<&Dir>)> = None;
                for start in &lists[0] {
                    let mut pick: Vec<&Dir> = lists.iter().map(|l| l[0]).collect();
                    pick[0] = start;
                    for _ in 0..4 {
                        for j in 1..on.len() {
                            let rest: Vec<f64> = {
                                let ws_r: Vec<f64> = on.iter().enumerate().filter(|(t, _)| *t != j).map(|(_, &i)| ws[i]).collect();
                                let es_r: Vec<&[f64]> = pick.iter().enumerate().filter(|(t, _)| *t != j).map(|(_, d)| d.v.as_slice()).collect();
                                combine(&ws_r, &es_r)
                            };
                            pick[j] = lists[j]
                                .iter()
                                .min_by(|x, y| {
                                    let fx = norm(&add(&rest, &x.v.iter().map(|v| v * ws[on[j]]).collect::<Vec<_>>()));
                                    let fy = norm(&add(&rest, &y.v.iter().map(|v| v * ws[on[j]]).collect::<Vec<_>>()));
                                    fx.partial_cmp(&fy).unwrap()
                                })
                                .unwrap();
                        }
                    }
                    let es: Vec<&[f64]> = pick.iter().map(|d| d.v.as_slice()).collect();
                    let ws_on: Vec<f64> = on.iter().map(|&i| ws[i]).collect();
                    let v = norm(&combine(&ws_on, &es));
                    if local.as_ref().map_or(true, |l| v < l.0) {
                        local = Some((v, pick));
                    }
                }
                local.unwrap()
            }
        };
        if best.as_ref().map_or(true, |b| value < b.0) {
            let dim = comps.iter().flatten().next().map_or(0, |d| d.v.len());
            let mut normals = vec![vec![0.0; dim]; k];
            for (t, &i) in on.iter().enumerate() {
                normals[i] = chosen[t].v.iter().map(|v| v * ws[i]).collect();
            }
            best = Some((value, normals));
        }
    }
    best
}

/// Sampled set points of `Ω ∩ B_δ(x̄)`, including `x̄`, with their cones.
fn cone_samples(set: &SetOracle, xbar: &[f64], delta: f64, levels: usize) -> Vec<NormalCone> {
    let mut pts = vec![xbar.to_vec()];
    pts.extend(set.boundary_samples(xbar, delta, levels));
    let mut out: Vec<NormalCone> = Vec::new();
    for p in pts {
        if let Ok(c) = frechet_normal_cone(set, &p) {
            // Points sharing a cone add nothing to the infimum.
            let same = out.iter().any(|o| {
                o.tag == c.tag && o.generators.len() == c.generators.len()
                    && o.generators.iter().zip(&c.generators).all(|(a, b)| dist(&a.direction, &b.direction) <= 1e-12)
            });
            if !same {
                out.push(c);
            }
        }
    }
    out
}

fn uniform_q1(coll: &SetCollection, radii: DualRadii, cfg: &DualCfg) -> DualCriterionReport {
    let per_set: Vec<Vec<NormalCone>> =
        coll.sets.iter().map(|s| cone_samples(s, &coll.base_point, radii.delta, cfg.levels)).collect();
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for cones in &per_set {
        combos = combos.into_iter().flat_map(|c| (0..cones.len()).map(move |j| [c.clone(), vec![j]].concat())).collect();
    }
    let results: Vec<Option<(f64, Vec<Vec<f64>>, Vec<usize>)>> = combos
        .par_iter()
        .map(|idx| {
            let comps: Vec<Vec<Dir>> = idx
                .iter()
                .zip(&per_set)
                .map(|(&j, cones)| cones[j].directions(cfg.angle_step_deg).into_iter().map(|v| dir(v, &cones[j])).collect())
                .collect();
            inner_min(&comps, 1.0, 0.0, cfg.weight_steps).map(|(v, n)| (v, n, idx.clone()))
        })
        .collect();
    let mut report = DualCriterionReport {
        kind: DualKind::UniformQ1,
        q: 1.0,
        radii,
        infimum_estimate: f64::INFINITY,
        witness_points: vec![],
        witness_normals: vec![],
        samples: combos.len(),
        notes: vec![],
    };
    for (v, normals, idx) in results.into_iter().flatten() {
        if v < report.infimum_estimate {
            report.infimum_estimate = v;
            report.witness_points = idx.iter().zip(&per_set).map(|(&j, c)| c[j].base.clone()).collect();
            report.witness_normals = normals;
        }
    }
    if report.infimum_estimate.is_infinite() {
        report.notes.push("no admissible normals: empty infimum".into());
    }
    report
}

/// Candidate set points for `x`: `x` itself when inside, otherwise boundary
/// points where the distance to `x` is stationary, all within `ρ` of `x`.
fn partners(set: &SetOracle, x: &[f64], rho: f64) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    if set.contains(x) {
        out.push(x.to_vec());
    }
    for p in set.project(x)?.into_iter().chain(set.boundary_stationary(x)) {
        if dist(&p, x) < rho && !out.iter().any(|o| dist(o, &p) <= 1e-14) {
            out.push(p);
        }
    }
    Ok(out)
}

fn subreg_at(coll: &SetCollection, x: &[f64], q: f64, radii: DualRadii, cfg: &DualCfg) -> Result<Option<(f64, Vec<Vec<f64>>, Vec<Vec<f64>>)>> {
    let cands: Vec<Vec<Vec<f64>>> = coll.sets.iter().map(|s| partners(s, x, radii.rho)).collect::<Result<_>>()?;
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for c in &cands {
        combos = combos.into_iter().flat_map(|v| (0..c.len()).map(move |j| [v.clone(), vec![j]].concat())).collect();
        combos.truncate(256);
    }
    let mut best: Option<(f64, Vec<Vec<f64>>, Vec<Vec<f64>>)> = None;
    for idx in combos {
        let omega: Vec<&Vec<f64>> = idx.iter().zip(&cands).map(|(&j, c)| &c[j]).collect();
        let ds: Vec<f64> = omega.iter().map(|w| dist(x, w)).collect();
        let s = ds.iter().cloned().fold(0.0, f64::max);
        // The inner limit takes ε to zero with (x, ω̂) fixed; where ε is not
        // small against ‖v̂‖ the alignment constraint says nothing.
        if !(s > EPS_RATIO * radii.eps && s < radii.rho) {
            continue;
        }
        let c = q * s.powf(q - 1.0);
        let mut comps = Vec::with_capacity(coll.m());
        for ((set, w), &d) in coll.sets.iter().zip(&omega).zip(&ds) {
            if d < s * (1.0 - 1e-9) {
                comps.push(vec![]);
                continue;
            }
            let cone = frechet_normal_cone(set, w)?;
            let axis: Vec<f64> = x.iter().zip(w.iter()).map(|(a, b)| (a - b) / d).collect();
            let min_cos = 1.0 - radii.eps / d;
            let mut dirs = vec![axis.clone()];
            if x.len() == 2 {
                let n = (360.0 / cfg.angle_step_deg).round() as usize;
                for k in 0..n {
                    let a = (k as f64 * cfg.angle_step_deg).to_radians();
                    let e = vec![a.cos(), a.sin()];
                    if crate::geometry::dot(&e, &axis) >= min_cos {
                        dirs.push(e);
                    }
                }
            }
            for g in &cone.generators {
                if crate::geometry::dot(&g.direction, &axis) >= min_cos {
                    dirs.push(g.direction.clone());
                }
            }
            comps.push(dirs.into_iter().map(|v| dir(v, &cone)).collect());
        }
        if let Some((v, normals)) = inner_min(&comps, c, radii.rho, cfg.weight_steps) {
            if best.as_ref().map_or(true, |b| v < b.0) {
                let mut pts = vec![x.to_vec()];
                pts.extend(omega.iter().map(|w| (*w).clone()));
                best = Some((v, pts, normals));
            }
        }
    }
    Ok(best)
}

fn subreg_q(coll: &SetCollection, q: f64, radii: DualRadii, cfg: &DualCfg) -> Result<DualCriterionReport> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::Invalid(format!("subreg_q needs q in (0, 1], got {q}")));
    }
    if !(radii.rho > 0.0 && radii.eps > 0.0) {
        return Err(Error::Invalid("subreg_q needs rho > 0 and eps > 0".into()));
    }
    let domain = Domain::new(vec![coll.dim()]);
    let pattern = domain.pattern(cfg.samples, cfg.seed, 21);
    let mut points = Vec::new();
    for k in 0..6 {
        let hi = radii.rho * 0.5f64.powi(k) * (1.0 - 1e-9);
        points.extend(pattern.iter().filter_map(|p| domain.decode(p, 0.5 * hi, hi)).map(|b| add(&coll.base_point, &b[0])));
    }
    let results: Vec<Result<Option<(f64, Vec<Vec<f64>>, Vec<Vec<f64>>)>>> =
        points.par_iter().map(|x| subreg_at(coll, x, q, radii, cfg)).collect();
    let mut report = DualCriterionReport {
        kind: DualKind::SubregQ,
        q,
        radii,
        infimum_estimate: f64::INFINITY,
        witness_points: vec![],
        witness_normals: vec![],
        samples: 0,
        notes: vec!["sampled at fixed (rho, eps); failures between grid points are not detected".into()],
    };
    for r in results {
        if let Some((v, pts, normals)) = r? {
            report.samples += 1;
            if v < report.infimum_estimate {
                report.infimum_estimate = v;
                report.witness_points = pts;
                report.witness_normals = normals;
            }
        }
    }
    if report.infimum_estimate.is_infinite() {
        report.notes.push("no admissible configuration: empty infimum".into());
    }
    Ok(report)
}

/// Sampled infimum of the dual criterion of `kind` at the given radii.
pub fn dual_modulus(coll: &SetCollection, kind: DualKind, q: f64, radii: DualRadii, cfg: &DualCfg) -> Result<DualCriterionReport> {
    if coll.dim() != 2 {
        return Err(Error::NoAnalyticOracle("dual criteria outside the plane".into()));
    }
    if !(radii.delta > 0.0) {
        return Err(Error::Invalid("delta must be positive".into()));
    }
    match kind {
        DualKind::UniformQ1 => Ok(uniform_q1(coll, radii, cfg)),
        DualKind::SubregQ => subreg_q(coll, q, radii, cfg),
    }
}

/// `subreg_q` at each `(ρ, ε)` scale, in the given order.
pub fn dual_trend(coll: &SetCollection, q: f64, scales: &[(f64, f64)], cfg: &DualCfg) -> Result<Vec<DualCriterionReport>> {
    scales.iter().map(|&(rho, eps)| dual_modulus(coll, DualKind::SubregQ, q, DualRadii::perturbed(rho, eps), cfg)).collect()
}
