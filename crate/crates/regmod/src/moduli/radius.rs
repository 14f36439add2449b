//! The radius functions `θ_ρ` (translation size keeping the sets meeting near
//! `x̄`) and `ζ_{ρ,δ}` (enlargement radius whose overlap stays near the
//! intersection).

use super::sampler::{compass, minimize_shell, Blocks, Domain, Search};
use super::RadiusSchedule;
use crate::error::{Error, Result};
use crate::geometry::{add, dist, intersection_distance, intersection_distance_shifted, norm, GeomCfg, SetCollection};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaMethod {
    /// Distance from `x̄` to the translated intersection compared with `ρ`.
    Definition,
    /// Covering search: some `z ∈ B_ρ(x̄)` lies in every translated set.
    UnionForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusEstimate {
    /// `+∞` when nothing was found to break the property.
    pub value: f64,
    pub uncertainty: f64,
    pub witness: Vec<Vec<f64>>,
    pub samples: usize,
}

impl RadiusEstimate {
    pub fn infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

const FEAS_TOL: f64 = 1e-6;

fn phi(coll: &SetCollection, xs: &[Vec<f64>], z: &[f64]) -> Result<f64> {
    let mut m = 0.0f64;
    for (s, a) in coll.sets.iter().zip(xs) {
        m = m.max(s.distance(&add(z, a))?);
    }
    Ok(m)
}

fn ball_project(c: &[f64], r: f64, z: &[f64]) -> Vec<f64> {
    let d = dist(c, z);
    if d <= r {
        z.to_vec()
    } else {
        c.iter().zip(z).map(|(c, z)| c + (z - c) * r / d).collect()
    }
}

/// Whether `min_{z ∈ B_ρ(x̄)} max_i d(z + x_i, Ω_i)` vanishes: grid scan of
/// the ball, then cyclic projections from the best grid points.
fn covered(coll: &SetCollection, xs: &[Vec<f64>], rho: f64) -> Result<bool> {
    let c = &coll.base_point;
    for (s, a) in coll.sets.iter().zip(xs) {
        if s.distance(&add(c, a))? > rho + FEAS_TOL {
            return Ok(false);
        }
    }
    if phi(coll, xs, c)? <= FEAS_TOL {
        return Ok(true);
    }
    let n = coll.dim();
    let mut grid: Vec<Vec<f64>> = Vec::new();
    if n == 2 {
        for i in 0..15 {
            for j in 0..15 {
                let u = -1.0 + 2.0 * i as f64 / 14.0;
                let v = -1.0 + 2.0 * j as f64 / 14.0;
                if u * u + v * v <= 1.0 {
                    grid.push(vec![c[0] + rho * u, c[1] + rho * v]);
                }
            }
        }
    } else {
        for d in crate::geometry::probe_directions(n) {
            for t in [1.0 / 3.0, 2.0 / 3.0, 1.0] {
                grid.push(add(c, &d.iter().map(|v| v * t * rho).collect::<Vec<_>>()));
            }
        }
    }
    let mut scored = Vec::with_capacity(grid.len());
    for z in grid {
        let f = phi(coll, xs, &z)?;
        if f <= FEAS_TOL {
            return Ok(true);
        }
        scored.push((f, z));
    }
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let starts = std::iter::once(c.clone()).chain(scored.into_iter().take(4).map(|s| s.1));
    for z0 in starts {
        let mut z = z0;
        for _ in 0..300 {
            let prev = z.clone();
            for (s, a) in coll.sets.iter().zip(xs) {
                let p = s.project(&add(&z, a))?;
                z = p[0].iter().zip(a).map(|(p, a)| p - a).collect();
            }
            z = ball_project(c, rho, &z);
            if phi(coll, xs, &z)? <= FEAS_TOL {
                return Ok(true);
            }
            if dist(&prev, &z) < 1e-14 {
                break;
            }
        }
    }
    Ok(false)
}

fn feasible(coll: &SetCollection, xs: &[Vec<f64>], rho: f64, method: ThetaMethod) -> Result<bool> {
    match method {
        ThetaMethod::Definition => {
            let d = intersection_distance_shifted(&coll.sets, xs, &coll.base_point, &GeomCfg::default())?;
            Ok(d.value <= rho * (1.0 + 1e-12))
        }
        ThetaMethod::UnionForm => covered(coll, xs, rho),
    }
}

fn along(dir: &[Vec<f64>], t: f64) -> Blocks {
    dir.iter().map(|b| b.iter().map(|v| v * t).collect()).collect()
}

fn unit(w: &[f64], dims: &[usize]) -> Option<Blocks> {
    let mut out = Vec::new();
    let mut at = 0;
    for &d in dims {
        out.push(w[at..at + d].to_vec());
        at += d;
    }
    let top = out.iter().map(|b| norm(b)).fold(0.0, f64::max);
    if top < 1e-12 {
        return None;
    }
    Some(along(&out, 1.0 / top))
}

/// First scale in `[0, cap]` at which the ray breaks feasibility, as `(lo, hi)`;
/// `None` when the ray is feasible at `cap`.
fn critical(coll: &SetCollection, dir: &[Vec<f64>], rho: f64, cap: f64, method: ThetaMethod, iters: usize) -> Result<Option<(f64, f64)>> {
    if feasible(coll, &along(dir, cap), rho, method)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, cap);
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if feasible(coll, &along(dir, mid), rho, method)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some((lo, hi)))
}

/// `θ_ρ`: the largest `r` such that every sampled translation with
/// `max‖x_i‖ ≤ r` keeps the translated sets meeting within `ρ` of `x̄`.
/// Each sampled direction is bisected only when it breaks feasibility below
/// the current best; the worst directions are then refined by compass search.
pub fn theta_rho(coll: &SetCollection, rho: f64, method: ThetaMethod, cfg: &RadiusSchedule) -> Result<RadiusEstimate> {
    cfg.validate()?;
    if !(rho > 0.0) {
        return Err(Error::Invalid(format!("rho must be positive, got {rho}")));
    }
    let dims = vec![coll.dim(); coll.m()];
    let domain = Domain::new(dims.clone());
    let pattern = domain.pattern(cfg.samples_per_radius, cfg.seed, 11);
    let dirs: Vec<Blocks> = pattern.iter().filter_map(|p| unit(&p[1..], &dims)).collect();
    let cap = 10.0 * rho;
    let iters = 34;
    let mut best: Option<(f64, f64, usize)> = None;
    let mut scores: Vec<(f64, usize)> = Vec::new();
    for (i, d) in dirs.iter().enumerate() {
        // A ray feasible at the best lower bracket cannot improve the infimum.
        let top = best.map_or(cap, |b| b.0);
        if top <= 0.0 {
            break;
        }
        if let Some((lo, hi)) = critical(coll, d, rho, top, method, iters)? {
            scores.push((hi, i));
            if best.map_or(true, |b| hi < b.1) {
                best = Some((lo, hi, i));
            }
        }
    }
    let Some((mut lo, mut hi, bi)) = best else {
        return Ok(RadiusEstimate { value: f64::INFINITY, uncertainty: 0.0, witness: vec![], samples: dirs.len() });
    };
    let mut witness = along(&dirs[bi], hi);
    scores.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let (starts, evals) = match method {
        ThetaMethod::Definition => (6, 300),
        ThetaMethod::UnionForm => (3, 80),
    };
    let flat = |d: &Blocks| d.iter().flatten().cloned().collect::<Vec<f64>>();
    // A bracket already pinned at zero has nothing left to refine.
    let starts = if lo > 0.0 { starts } else { 0 };
    let seeds: Vec<Vec<f64>> = scores.iter().take(starts).map(|&(_, i)| flat(&dirs[i])).collect();
    let ceiling = 2.0 * hi;
    let bounds = vec![(-1.0, 1.0); dims.iter().sum()];
    let refined: Vec<(f64, Vec<f64>)> = seeds
        .into_par_iter()
        .map(|w0| {
            let g = |w: &[f64]| match unit(w, &dims) {
                Some(d) => match critical(coll, &d, rho, ceiling, method, 26) {
                    Ok(Some((_, h))) => h,
                    _ => f64::INFINITY,
                },
                None => f64::INFINITY,
            };
            compass(&g, w0, &bounds, 0.1, 1e-5, evals)
        })
        .collect();
    for (v, w) in refined {
        if v < hi {
            if let Some(d) = unit(&w, &dims) {
                if let Some((l, h)) = critical(coll, &d, rho, ceiling, method, iters)? {
                    if h < hi {
                        lo = l;
                        hi = h;
                        witness = along(&d, h);
                    }
                }
            }
        }
    }
    let slack = match method {
        ThetaMethod::Definition => 0.0,
        ThetaMethod::UnionForm => FEAS_TOL,
    };
    Ok(RadiusEstimate { value: 0.5 * (lo + hi), uncertainty: 0.5 * (hi - lo) + slack + 1e-9, witness, samples: dirs.len() })
}

/// `ζ_{ρ,δ}`: the infimum of `max_i d(x, Ω_i)` over sampled `x ∈ B_δ(x̄)` with
/// `d(x, ⋂Ω_i) > ρ`. Samples are moved along the ray from their nearest
/// intersection point onto the level set `d = ρ`, where the infimum sits.
pub fn zeta_rho_delta(coll: &SetCollection, rho: f64, delta: f64, cfg: &RadiusSchedule) -> Result<RadiusEstimate> {
    cfg.validate()?;
    if !(rho > 0.0 && delta > 0.0) {
        return Err(Error::Invalid("rho and delta must be positive".into()));
    }
    let empty = RadiusEstimate { value: f64::INFINITY, uncertainty: 0.0, witness: vec![], samples: 0 };
    if rho >= delta {
        return Ok(empty);
    }
    let xbar = &coll.base_point;
    let level = rho * (1.0 + 1e-9);
    let place = |b: &Blocks| -> Result<Option<Vec<f64>>> {
        let x = add(xbar, &b[0]);
        let d = intersection_distance(coll, &x)?;
        if d.value <= 1e-12 || d.value.is_infinite() {
            return Ok(None);
        }
        let p = &d.points[0];
        let y: Vec<f64> = p.iter().zip(&x).map(|(p, x)| p + (x - p) * level / d.value).collect();
        if dist(&y, xbar) <= delta {
            Ok(Some(y))
        } else if d.value > rho {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    };
    let f = |b: &Blocks| -> Result<Option<f64>> {
        match place(b)? {
            Some(y) => Ok(Some(coll.max_distance(&y)?)),
            None => Ok(None),
        }
    };
    let domain = Domain::new(vec![coll.dim()]);
    let pattern = domain.pattern(cfg.samples_per_radius, cfg.seed, 12);
    let shell = minimize_shell(&domain, &pattern, rho, delta, &Search::default(), &f);
    if shell.best.is_infinite() {
        return Ok(RadiusEstimate { samples: shell.valid, ..empty });
    }
    let witness = match &shell.witness {
        Some(b) => place(b)?.map(|y| vec![y]).unwrap_or_default(),
        None => vec![],
    };
    Ok(RadiusEstimate { value: shell.best, uncertainty: 1e-3 * shell.best + 1e-9, witness, samples: shell.valid })
}
