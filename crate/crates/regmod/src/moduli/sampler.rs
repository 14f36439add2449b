//! Seeded sample patterns over product-space shells, refined by compass search.
//!
//! A configuration is a list of blocks (vectors, possibly of different
//! dimensions) whose max block norm lies in a shell `[lo, hi]`. One pattern is
//! drawn per estimator call and rescaled to every shell, so traces vary
//! smoothly with the radius.

use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub(crate) struct Domain {
    pub dims: Vec<usize>,
}

pub(crate) type Blocks = Vec<Vec<f64>>;

impl Domain {
    pub fn new(dims: Vec<usize>) -> Self {
        Self { dims }
    }

    fn nparams(&self) -> usize {
        1 + self.dims.iter().sum::<usize>()
    }

    /// Parameter layout: `[s, w_1.., w_2.., ...]`, `s ∈ [0,1]` places the max
    /// block norm log-uniformly in `[lo, hi]`, `w_j ∈ [-1,1]^{d_j}`.
    pub fn decode(&self, p: &[f64], lo: f64, hi: f64) -> Option<Blocks> {
        let r = lo * (hi / lo).powf(p[0].clamp(0.0, 1.0));
        let mut blocks = Vec::with_capacity(self.dims.len());
        let mut at = 1;
        let mut top = 0.0f64;
        for &d in &self.dims {
            let w: Vec<f64> = p[at..at + d].to_vec();
            top = top.max(crate::geometry::norm(&w));
            blocks.push(w);
            at += d;
        }
        if top < 1e-12 {
            return None;
        }
        for b in blocks.iter_mut() {
            for v in b.iter_mut() {
                *v *= r / top;
            }
        }
        Some(blocks)
    }

    pub(crate) fn block_choices(d: usize) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        if d == 2 {
            for k in 0..8 {
                let a = std::f64::consts::PI * k as f64 / 4.0;
                let (s, c) = a.sin_cos();
                out.push(vec![clean(c), clean(s)]);
            }
        } else {
            for j in 0..d {
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; d];
                    e[j] = s;
                    out.push(e);
                }
            }
        }
        out.push(vec![0.0; d]);
        out
    }

    /// Structured axis/diagonal combinations followed by seeded random draws.
    pub fn pattern(&self, samples: usize, seed: u64, salt: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut structured: Vec<Vec<f64>> = vec![vec![]];
        for &d in &self.dims {
            let choices = Self::block_choices(d);
            let mut next = Vec::with_capacity(structured.len() * choices.len());
            for s in &structured {
                for c in &choices {
                    let mut v = s.clone();
                    v.extend_from_slice(c);
                    next.push(v);
                }
            }
            structured = next;
        }
        structured.retain(|w| w.iter().any(|&v| v != 0.0));
        // Configurations with fewer active blocks come first; the last tier
        // that overflows the budget is subsampled.
        let active = |w: &Vec<f64>| {
            let mut at = 0;
            self.dims
                .iter()
                .filter(|&&d| {
                    let on = w[at..at + d].iter().any(|&v| v != 0.0);
                    at += d;
                    on
                })
                .count()
        };
        structured.sort_by_key(|w| active(w));
        let budget = (samples / 2).max(1);
        if structured.len() > budget {
            let tier = active(&structured[budget - 1]);
            let start = structured.iter().position(|w| active(w) == tier).unwrap();
            let end = structured.iter().rposition(|w| active(w) == tier).unwrap() + 1;
            for i in start..budget {
                let j = rng.gen_range(i..end);
                structured.swap(i, j);
            }
            structured.truncate(budget);
        }
        let both = structured.len() * 2 <= budget;
        let mut out = Vec::with_capacity(samples.max(structured.len()));
        for w in &structured {
            let mut p = vec![1.0];
            p.extend_from_slice(w);
            out.push(p);
            if both {
                let mut p = vec![0.0];
                p.extend_from_slice(w);
                out.push(p);
            }
        }
        while out.len() < samples {
            let mut p = vec![rng.gen::<f64>()];
            let interior = rng.gen::<f64>() < 0.2;
            for &d in &self.dims {
                let mut w: Vec<f64> = (0..d).map(|_| gauss(&mut rng)).collect();
                let n = crate::geometry::norm(&w).max(1e-300);
                let radius = if interior { rng.gen::<f64>() } else { 1.0 };
                let radius = if self.dims.len() > 1 && rng.gen::<f64>() < 0.1 { 0.0 } else { radius };
                for v in w.iter_mut() {
                    *v *= radius / n;
                }
                p.extend(w);
            }
            out.push(p);
        }
        out
    }
}

fn clean(v: f64) -> f64 {
    if v.abs() < 1e-15 {
        0.0
    } else {
        v
    }
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(1e-300);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

#[derive(Clone, Debug, Default)]
pub(crate) struct ShellBest {
    pub best: f64,
    pub witness: Option<Blocks>,
    pub valid: usize,
    pub errors: usize,
}

pub(crate) struct Search {
    pub starts: usize,
    pub max_evals: usize,
    pub min_step: f64,
}

impl Default for Search {
    fn default() -> Self {
        Self { starts: 8, max_evals: 1500, min_step: 1e-6 }
    }
}

fn eval_at<F>(domain: &Domain, f: &F, p: &[f64], lo: f64, hi: f64) -> (f64, Option<Blocks>, bool, bool)
where
    F: Fn(&Blocks) -> Result<Option<f64>> + Sync,
{
    match domain.decode(p, lo, hi) {
        None => (f64::INFINITY, None, false, false),
        Some(b) => match f(&b) {
            Ok(Some(v)) if !v.is_nan() => (v, Some(b), true, false),
            Ok(_) => (f64::INFINITY, None, false, false),
            Err(_) => (f64::INFINITY, None, false, true),
        },
    }
}

/// Box-constrained compass search from `p0`; returns the best value and point.
pub(crate) fn compass<G>(g: &G, p0: Vec<f64>, bounds: &[(f64, f64)], step0: f64, min_step: f64, max_evals: usize) -> (f64, Vec<f64>)
where
    G: Fn(&[f64]) -> f64,
{
    let mut p = p0;
    let mut fp = g(&p);
    let mut step = step0;
    let mut evals = 1;
    while step > min_step && evals < max_evals {
        let mut improved = false;
        for j in 0..p.len() {
            for dir in [1.0, -1.0] {
                let mut z = p.clone();
                z[j] = (z[j] + dir * step).clamp(bounds[j].0, bounds[j].1);
                if z[j] == p[j] {
                    continue;
                }
                let fz = g(&z);
                evals += 1;
                if fz < fp {
                    p = z;
                    fp = fz;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (fp, p)
}

/// Minimizes `f` over one shell: pattern scan, then compass refinement of the
/// best distinct starts. Reductions run in pattern order for determinism.
pub(crate) fn minimize_shell<F>(domain: &Domain, pattern: &[Vec<f64>], lo: f64, hi: f64, search: &Search, f: &F) -> ShellBest
where
    F: Fn(&Blocks) -> Result<Option<f64>> + Sync,
{
    let evals: Vec<(f64, Option<Blocks>, bool, bool)> =
        pattern.par_iter().map(|p| eval_at(domain, f, p, lo, hi)).collect();
    let mut out = ShellBest { best: f64::INFINITY, ..Default::default() };
    for (v, b, ok, err) in &evals {
        out.valid += *ok as usize;
        out.errors += *err as usize;
        if *v < out.best {
            out.best = *v;
            out.witness = b.clone();
        }
    }
    let mut order: Vec<usize> = (0..pattern.len()).filter(|&i| evals[i].0.is_finite()).collect();
    order.sort_by(|&a, &b| evals[a].0.partial_cmp(&evals[b].0).unwrap().then(a.cmp(&b)));
    let mut starts: Vec<usize> = Vec::new();
    for i in order {
        if starts.len() >= search.starts {
            break;
        }
        let near = starts.iter().any(|&j| {
            pattern[i].iter().zip(&pattern[j]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) < 1e-3
        });
        if !near {
            starts.push(i);
        }
    }
    let mut bounds = vec![(0.0, 1.0)];
    bounds.extend(std::iter::repeat((-1.0, 1.0)).take(domain.nparams() - 1));
    let refined: Vec<(f64, Vec<f64>)> = starts
        .par_iter()
        .map(|&i| {
            let g = |p: &[f64]| eval_at(domain, f, p, lo, hi).0;
            compass(&g, pattern[i].clone(), &bounds, 0.125, search.min_step, search.max_evals)
        })
        .collect();
    for (v, p) in refined {
        if v < out.best {
            let (v2, b, _, _) = eval_at(domain, f, &p, lo, hi);
            out.best = v2;
            out.witness = b;
        }
    }
    out
}
