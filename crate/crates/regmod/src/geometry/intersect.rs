//! Distance to an intersection of (translated) sets.
//!
//! Strategy order: exact candidate enumeration where the geometry allows it
//! (planar curve-bounded sets, or polyhedra in any dimension), otherwise an
//! alternating-projection warm start refined by a penalized compass search,
//! reported as a bracket.

use super::curves::Curve;
use super::{add, dist, dot, sub, GeomCfg, SetCollection, SetKind, SetOracle};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionDistance {
    /// Bracket midpoint; `+∞` when the intersection is certified empty.
    pub value: f64,
    /// Bracket width; zero for exact oracles.
    pub width: f64,
    /// Nearest points found (all minimizers for exact oracles).
    pub points: Vec<Vec<f64>>,
    pub exact: bool,
}

/// `d(x, ⋂ Ω_i)` for a collection.
pub fn intersection_distance(coll: &SetCollection, x: &[f64]) -> Result<IntersectionDistance> {
    let zero = vec![vec![0.0; coll.dim()]; coll.m()];
    intersection_distance_shifted(&coll.sets, &zero, x, &GeomCfg::default())
}

pub(crate) fn intersection_distance_sets(sets: &[SetOracle], x: &[f64], tol: f64) -> Result<IntersectionDistance> {
    let zero = vec![vec![0.0; x.len()]; sets.len()];
    let cfg = GeomCfg { tol, ..GeomCfg::default() };
    intersection_distance_shifted(sets, &zero, x, &cfg)
}

/// `d(x, ⋂ (Ω_i − a_i))`.
pub fn intersection_distance_shifted(
    sets: &[SetOracle],
    shifts: &[Vec<f64>],
    x: &[f64],
    cfg: &GeomCfg,
) -> Result<IntersectionDistance> {
    let member = |y: &[f64]| sets.iter().zip(shifts).all(|(s, a)| s.contains(&add(y, a)));
    if member(x) {
        return Ok(IntersectionDistance { value: 0.0, width: 0.0, points: vec![x.to_vec()], exact: true });
    }
    if x.len() == 2 && sets.iter().all(|s| s.planar()) {
        return Ok(planar(sets, shifts, x, &member));
    }
    let mut rows = Vec::new();
    if sets.iter().zip(shifts).all(|(s, a)| polyhedral(s, a, &mut rows)) {
        return Ok(polytope(&rows, x, &member));
    }
    bracket(sets, shifts, x, cfg)
}

fn finish(x: &[f64], feasible: Vec<Vec<f64>>) -> IntersectionDistance {
    let best = feasible.iter().map(|p| dist(x, p)).fold(f64::INFINITY, f64::min);
    let band = 1e-9 * (1.0 + best);
    let mut points: Vec<Vec<f64>> = Vec::new();
    for p in feasible {
        if dist(x, &p) <= best + band && !points.iter().any(|q| dist(q, &p) <= 1e-12) {
            points.push(p);
        }
    }
    IntersectionDistance { value: best, width: 0.0, points, exact: true }
}

fn planar(sets: &[SetOracle], shifts: &[Vec<f64>], x: &[f64], member: &dyn Fn(&[f64]) -> bool) -> IntersectionDistance {
    let mut cs: Vec<Curve> = Vec::new();
    for (s, a) in sets.iter().zip(shifts) {
        s.curves([a[0], a[1]], &mut cs);
    }
    let mut feasible = Vec::new();
    let mut consider = |p: [f64; 2]| {
        if p[0].is_finite() && p[1].is_finite() && member(&p) {
            feasible.push(p.to_vec());
        }
    };
    for c in &cs {
        c.stationary(x).into_iter().for_each(&mut consider);
    }
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            cs[i].meet(&cs[j]).into_iter().for_each(&mut consider);
        }
    }
    finish(x, feasible)
}

/// Collects `⟨n, y⟩ ≥ b` rows for translated polyhedral sets.
fn polyhedral(s: &SetOracle, a: &[f64], rows: &mut Vec<(Vec<f64>, f64)>) -> bool {
    match &s.kind {
        SetKind::Halfspace { normal, offset } => {
            rows.push((normal.clone(), offset - dot(normal, a)));
            true
        }
        SetKind::WholeSpace => true,
        SetKind::Intersection(ms) => ms.iter().all(|o| polyhedral(o, a, rows)),
        SetKind::Translate { base, shift } => polyhedral(base, &add(a, shift), rows),
        _ => false,
    }
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col].abs() < 1e-13 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn polytope(rows: &[(Vec<f64>, f64)], x: &[f64], member: &dyn Fn(&[f64]) -> bool) -> IntersectionDistance {
    let k = rows.len();
    let dim = x.len();
    let mut feasible = Vec::new();
    let mut subset: Vec<usize> = Vec::new();
    fn walk(
        start: usize,
        k: usize,
        dim: usize,
        subset: &mut Vec<usize>,
        rows: &[(Vec<f64>, f64)],
        x: &[f64],
        member: &dyn Fn(&[f64]) -> bool,
        feasible: &mut Vec<Vec<f64>>,
    ) {
        if !subset.is_empty() {
            let gram: Vec<Vec<f64>> =
                subset.iter().map(|&i| subset.iter().map(|&j| dot(&rows[i].0, &rows[j].0)).collect()).collect();
            let rhs: Vec<f64> = subset.iter().map(|&i| dot(&rows[i].0, x) - rows[i].1).collect();
            if let Some(lam) = solve(gram, rhs) {
                let mut y = x.to_vec();
                for (l, &i) in lam.iter().zip(subset.iter()) {
                    for (yy, n) in y.iter_mut().zip(&rows[i].0) {
                        *yy -= l * n;
                    }
                }
                if member(&y) {
                    feasible.push(y);
                }
            }
        }
        if subset.len() == dim {
            return;
        }
        for i in start..k {
            subset.push(i);
            walk(i + 1, k, dim, subset, rows, x, member, feasible);
            subset.pop();
        }
    }
    walk(0, k, dim, &mut subset, rows, x, member, &mut feasible);
    finish(x, feasible)
}

fn first_projection(s: &SetOracle, a: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let p = s.project(&add(y, a))?;
    Ok(sub(&p[0], a))
}

fn max_dist(sets: &[SetOracle], shifts: &[Vec<f64>], y: &[f64]) -> Result<f64> {
    let mut m = 0.0f64;
    for (s, a) in sets.iter().zip(shifts) {
        m = m.max(s.distance(&add(y, a))?);
    }
    Ok(m)
}

/// Cyclic projections from `y`; returns a point within `tol` of every set, if reached.
fn alternate(sets: &[SetOracle], shifts: &[Vec<f64>], mut y: Vec<f64>, tol: f64) -> Result<Option<Vec<f64>>> {
    for _ in 0..2000 {
        if max_dist(sets, shifts, &y)? <= tol {
            return Ok(Some(y));
        }
        for (s, a) in sets.iter().zip(shifts) {
            y = first_projection(s, a, &y)?;
        }
    }
    Ok(None)
}

fn bracket(sets: &[SetOracle], shifts: &[Vec<f64>], x: &[f64], cfg: &GeomCfg) -> Result<IntersectionDistance> {
    let lo = max_dist(sets, shifts, x)?;
    let mut best: Option<Vec<f64>> = None;
    let consider = |p: Option<Vec<f64>>, best: &mut Option<Vec<f64>>| {
        if let Some(p) = p {
            if best.as_ref().map_or(true, |b| dist(x, &p) < dist(x, b)) {
                *best = Some(p);
            }
        }
    };
    consider(alternate(sets, shifts, x.to_vec(), cfg.tol)?, &mut best);
    // Penalized compass search on ‖y − x‖ + μ·max_i d(y, Ω_i − a_i), restarted from
    // axis-perturbed seeds, each polished back onto the intersection.
    let mu = 10.0;
    let dim = x.len();
    let step0 = lo.max(1e-3);
    let mut seeds = vec![x.to_vec()];
    if let Some(b) = &best {
        seeds.push(b.clone());
    }
    for j in 0..dim {
        for s in [1.0, -1.0] {
            let mut y = x.to_vec();
            y[j] += s * step0;
            seeds.push(y);
        }
    }
    for seed in seeds {
        let f = |y: &[f64]| -> Result<f64> { Ok(dist(y, x) + mu * max_dist(sets, shifts, y)?) };
        let mut y = seed;
        let mut fy = f(&y)?;
        let mut step = step0;
        while step > cfg.bracket_tol * 1e-2 {
            let mut moved = false;
            for j in 0..dim {
                for s in [1.0, -1.0] {
                    let mut z = y.clone();
                    z[j] += s * step;
                    let fz = f(&z)?;
                    if fz < fy {
                        y = z;
                        fy = fz;
                        moved = true;
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        consider(alternate(sets, shifts, y, cfg.tol)?, &mut best);
    }
    match best {
        Some(p) => {
            let hi = dist(x, &p);
            if hi - lo <= cfg.bracket_tol {
                Ok(IntersectionDistance { value: 0.5 * (lo + hi), width: hi - lo, points: vec![p], exact: false })
            } else {
                Err(Error::UnresolvedIntersection { lo, hi })
            }
        }
        None => Err(Error::UnresolvedIntersection { lo, hi: f64::INFINITY }),
    }
}
