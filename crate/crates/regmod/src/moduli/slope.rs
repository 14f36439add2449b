//! Slope constant: the liminf over base pairs `(x, ω̂)` near `(x̄, x̄)` of the
//! local decrease rate of `max_i ‖x − ω_i‖^q` under the `ρ`-weighted norm,
//! moving `x` freely and each `ω_i` inside its set.

use super::quotient::{scan, shell_notes};
use super::sampler::{Blocks, Domain, Search};
use super::{ModulusEstimate, ModulusKind, RadiusSchedule, TracePoint};
use crate::error::{Error, Result};
use crate::geometry::{add, dist, scale, weighted_product_norm, SetCollection};

const EXACT: f64 = 1e-15;

fn value(u: &[f64], vs: &[&Vec<f64>], q: f64) -> f64 {
    vs.iter().map(|v| dist(u, v)).fold(0.0, f64::max).powf(q)
}

/// Sampled local slope at `(x, ω̂)` with weight `rho`.
fn local_slope(coll: &SetCollection, x: &[f64], omega: &[Vec<f64>], q: f64, rho: f64) -> Result<f64> {
    let m_dist = omega.iter().map(|w| dist(x, w)).fold(0.0, f64::max);
    let base = m_dist.powf(q);
    let h = 1e-6 * m_dist;
    let mut dirs = Domain::block_choices(x.len());
    dirs.pop();
    let mut us = vec![x.to_vec()];
    us.extend(dirs.iter().map(|e| add(x, &scale(e, h))));
    let mut vs: Vec<Vec<Vec<f64>>> = Vec::with_capacity(omega.len());
    // Perturbations are far below the membership tolerance scale only if the
    // sets are tested exactly.
    for (s, w) in coll.sets.iter().zip(omega) {
        let s = s.clone().with_tol(EXACT);
        let mut cand = vec![w.clone()];
        for e in &dirs {
            for step in [h, h / rho] {
                cand.push(s.project(&add(w, &scale(e, step)))?.swap_remove(0));
            }
        }
        vs.push(cand);
    }
    let mut best = 0.0f64;
    let mut idx = vec![0usize; omega.len()];
    loop {
        let pick: Vec<&Vec<f64>> = idx.iter().zip(&vs).map(|(&k, c)| &c[k]).collect();
        let dv: Vec<Vec<f64>> = pick.iter().zip(omega).map(|(v, w)| v.iter().zip(w).map(|(a, b)| a - b).collect()).collect();
        for u in &us {
            let du: Vec<f64> = u.iter().zip(x).map(|(a, b)| a - b).collect();
            let step = weighted_product_norm(&du, &dv, rho);
            if step > 0.0 {
                let gain = base - value(u, &pick, q);
                if gain > 0.0 {
                    best = best.max(gain / step);
                }
            }
        }
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < vs[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
    }
    Ok(best)
}

/// Per radius `ρ_k`, the smallest sampled local slope over base pairs with
/// `‖x − x̄‖ ≤ ρ_k` and `0 < max‖x − ω_i‖ < ρ_k`, where `ω_i` is the nearest
/// point of `Ω_i` to a displaced copy of `x`.
pub fn slope_modulus(coll: &SetCollection, q: f64, cfg: &RadiusSchedule) -> Result<ModulusEstimate> {
    cfg.validate()?;
    if !(q > 0.0) {
        return Err(Error::Invalid(format!("q must be positive, got {q}")));
    }
    let n = coll.dim();
    let domain = Domain::new(vec![n; coll.m() + 1]);
    let radii = cfg.radii();
    let mut trace = Vec::with_capacity(radii.len());
    let mut notes = Vec::new();
    let mut lite = *cfg;
    lite.samples_per_radius = (cfg.samples_per_radius / 4).max(50);
    for &rho in &radii {
        let f = |b: &Blocks| -> Result<Option<f64>> {
            let x = add(&coll.base_point, &b[0]);
            let mut omega = Vec::with_capacity(coll.m());
            for (s, d) in coll.sets.iter().zip(&b[1..]) {
                omega.push(s.project(&add(&x, d))?.swap_remove(0));
            }
            let m = omega.iter().map(|w| dist(&x, w)).fold(0.0, f64::max);
            if !(m > 1e-12 && m < rho) {
                return Ok(None);
            }
            local_slope(coll, &x, &omega, q, rho).map(Some)
        };
        let shells = scan(&domain, &[rho], cfg.shrink, &lite, 4, &Search { starts: 3, max_evals: 300, min_step: 1e-5 }, &f);
        notes.extend(shell_notes(&shells));
        let s = shells.into_iter().next().unwrap();
        let witness = match s.witness {
            Some(b) => {
                let x = add(&coll.base_point, &b[0]);
                let mut w = vec![x.clone()];
                for (set, d) in coll.sets.iter().zip(&b[1..]) {
                    w.push(set.project(&add(&x, d))?.swap_remove(0));
                }
                w
            }
            None => vec![],
        };
        trace.push(TracePoint { rho, quotient: s.best, witness });
    }
    Ok(ModulusEstimate::from_trace(ModulusKind::Slope, q, trace, notes))
}


