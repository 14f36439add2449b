use super::{add, dist, dot, intersect, norm, sub, SetKind, SetOracle, Side};
use crate::error::Result;
use crate::poly;

pub(crate) fn quad(c: &[f64; 3], t: f64) -> f64 {
    c[0] + t * (c[1] + t * c[2])
}

/// Every stationary point of `t ↦ ‖(t, p(t)) − x‖²` on a quadratic graph.
pub(crate) fn graph_stationary(c: &[f64; 3], x: &[f64]) -> Vec<[f64; 2]> {
    let (x0, y0) = (x[0], x[1]);
    let e = c[0] - y0;
    let roots = poly::cubic_roots(
        2.0 * c[2] * c[2],
        3.0 * c[1] * c[2],
        c[1] * c[1] + 2.0 * c[2] * e + 1.0,
        c[1] * e - x0,
    );
    roots.into_iter().map(|t| [t, quad(c, t)]).collect()
}

fn ties(x: &[f64], cands: Vec<Vec<f64>>) -> (f64, Vec<Vec<f64>>) {
    let best = cands.iter().map(|p| dist(x, p)).fold(f64::INFINITY, f64::min);
    let band = 1e-9 * (1.0 + best);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for p in cands {
        if dist(x, &p) <= best + band && !out.iter().any(|q| dist(q, &p) <= 1e-12) {
            out.push(p);
        }
    }
    (best, out)
}

impl SetOracle {
    /// Membership within the absolute tolerance of the oracle.
    pub fn contains(&self, x: &[f64]) -> bool {
        let tol = self.tol;
        match &self.kind {
            SetKind::Halfspace { normal, offset } => dot(normal, x) >= offset - tol * norm(normal),
            SetKind::PolyGraph { coeffs } => (x[1] - quad(coeffs, x[0])).abs() <= tol || self.graph_dist(coeffs, x) <= tol,
            SetKind::PolySublevel { coeffs, side } => {
                let g = x[1] - quad(coeffs, x[0]);
                let strict = match side {
                    Side::Below => g <= 0.0,
                    Side::Above => g >= 0.0,
                };
                strict || self.graph_dist(coeffs, x) <= tol
            }
            SetKind::Union(s) => s.iter().any(|o| o.contains(x)),
            SetKind::Intersection(s) => s.iter().all(|o| o.contains(x)),
            SetKind::WholeSpace => true,
            SetKind::Translate { base, shift } => base.contains(&add(x, shift)),
        }
    }

    fn graph_dist(&self, c: &[f64; 3], x: &[f64]) -> f64 {
        graph_stationary(c, x).iter().map(|p| dist(x, p)).fold(f64::INFINITY, f64::min)
    }

    /// `d(x, Ω)`; exact for every built-in kind.
    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        match &self.kind {
            SetKind::Halfspace { normal, offset } => Ok(((offset - dot(normal, x)) / norm(normal)).max(0.0)),
            SetKind::PolyGraph { coeffs } => Ok(self.graph_dist(coeffs, x)),
            SetKind::PolySublevel { coeffs, .. } => {
                if self.contains(x) {
                    Ok(0.0)
                } else {
                    Ok(self.graph_dist(coeffs, x))
                }
            }
            SetKind::Union(s) => {
                let mut best = f64::INFINITY;
                for o in s {
                    best = best.min(o.distance(x)?);
                }
                Ok(best)
            }
            SetKind::Intersection(s) => Ok(intersect::intersection_distance_sets(s, x, self.tol)?.value),
            SetKind::WholeSpace => Ok(0.0),
            SetKind::Translate { base, shift } => base.distance(&add(x, shift)),
        }
    }

    /// All nearest points of the set to `x`.
    pub fn project(&self, x: &[f64]) -> Result<Vec<Vec<f64>>> {
        match &self.kind {
            SetKind::Halfspace { normal, offset } => {
                let gap = (offset - dot(normal, x)).max(0.0) / dot(normal, normal);
                Ok(vec![x.iter().zip(normal).map(|(a, n)| a + gap * n).collect()])
            }
            SetKind::PolyGraph { coeffs } => {
                let cands = graph_stationary(coeffs, x).iter().map(|p| p.to_vec()).collect();
                Ok(ties(x, cands).1)
            }
            SetKind::PolySublevel { coeffs, .. } => {
                if self.contains(x) {
                    return Ok(vec![x.to_vec()]);
                }
                let cands = graph_stationary(coeffs, x).iter().map(|p| p.to_vec()).collect();
                Ok(ties(x, cands).1)
            }
            SetKind::Union(s) => {
                let mut cands = Vec::new();
                for o in s {
                    cands.extend(o.project(x)?);
                }
                Ok(ties(x, cands).1)
            }
            SetKind::Intersection(s) => Ok(intersect::intersection_distance_sets(s, x, self.tol)?.points),
            SetKind::WholeSpace => Ok(vec![x.to_vec()]),
            SetKind::Translate { base, shift } => {
                Ok(base.project(&add(x, shift))?.into_iter().map(|p| sub(&p, shift)).collect())
            }
        }
    }
}
