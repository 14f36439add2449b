//! Boundary curves of planar sets: lines and quadratic graphs.

use super::oracle::{graph_stationary, quad};
use super::{SetKind, SetOracle};
use crate::poly;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Curve {
    /// `n · y = b`
    Line { n: [f64; 2], b: f64 },
    /// `v = c0 + c1 u + c2 u²`
    Parabola { c: [f64; 3] },
}

impl Curve {
    /// Points of the curve where the distance to `x` is stationary.
    pub fn stationary(&self, x: &[f64]) -> Vec<[f64; 2]> {
        match *self {
            Curve::Line { n, b } => {
                let g = (n[0] * x[0] + n[1] * x[1] - b) / (n[0] * n[0] + n[1] * n[1]);
                vec![[x[0] - g * n[0], x[1] - g * n[1]]]
            }
            Curve::Parabola { c } => graph_stationary(&c, x),
        }
    }

    /// Isolated intersection points of two curves.
    pub fn meet(&self, other: &Curve) -> Vec<[f64; 2]> {
        match (*self, *other) {
            (Curve::Line { n: n1, b: b1 }, Curve::Line { n: n2, b: b2 }) => {
                let det = n1[0] * n2[1] - n1[1] * n2[0];
                let s = (n1[0].hypot(n1[1])) * (n2[0].hypot(n2[1]));
                if det.abs() <= 1e-14 * s {
                    return vec![];
                }
                vec![[(b1 * n2[1] - n1[1] * b2) / det, (n1[0] * b2 - b1 * n2[0]) / det]]
            }
            (Curve::Line { n, b }, Curve::Parabola { c }) | (Curve::Parabola { c }, Curve::Line { n, b }) => {
                if n[1].abs() <= 1e-15 * n[0].abs() {
                    let u = b / n[0];
                    return vec![[u, quad(&c, u)]];
                }
                poly::quadratic_roots(n[1] * c[2], n[0] + n[1] * c[1], n[1] * c[0] - b)
                    .into_iter()
                    .map(|u| [u, quad(&c, u)])
                    .collect()
            }
            (Curve::Parabola { c: c1 }, Curve::Parabola { c: c2 }) => {
                let d = [c1[0] - c2[0], c1[1] - c2[1], c1[2] - c2[2]];
                let s = c1.iter().chain(c2.iter()).fold(0.0f64, |m, a| m.max(a.abs()));
                if d.iter().all(|a| a.abs() <= 1e-15 * s) {
                    return vec![];
                }
                poly::quadratic_roots(d[2], d[1], d[0]).into_iter().map(|u| [u, quad(&c1, u)]).collect()
            }
        }
    }

    /// Points on the curve at parameter offsets `ts` from the point nearest `center`.
    pub fn sample_near(&self, center: &[f64], ts: &[f64]) -> Vec<[f64; 2]> {
        match *self {
            Curve::Line { n, .. } => {
                let f = self.stationary(center)[0];
                let l = n[0].hypot(n[1]);
                let tau = [-n[1] / l, n[0] / l];
                ts.iter().map(|t| [f[0] + t * tau[0], f[1] + t * tau[1]]).collect()
            }
            Curve::Parabola { c } => ts
                .iter()
                .map(|t| {
                    let u = center[0] + t;
                    [u, quad(&c, u)]
                })
                .collect(),
        }
    }
}

/// Shifted quadratic `u ↦ p(u + h) − k`.
fn shift_quad(c: &[f64; 3], h: f64, k: f64) -> [f64; 3] {
    [c[0] + c[1] * h + c[2] * h * h - k, c[1] + 2.0 * c[2] * h, c[2]]
}

impl SetOracle {
    /// Boundary curves of `self − a` in the plane.
    pub(crate) fn curves(&self, a: [f64; 2], out: &mut Vec<Curve>) {
        match &self.kind {
            SetKind::Halfspace { normal, offset } => {
                let n = [normal[0], normal[1]];
                out.push(Curve::Line { n, b: offset - n[0] * a[0] - n[1] * a[1] });
            }
            SetKind::PolyGraph { coeffs } | SetKind::PolySublevel { coeffs, .. } => {
                out.push(Curve::Parabola { c: shift_quad(coeffs, a[0], a[1]) });
            }
            SetKind::Union(s) | SetKind::Intersection(s) => s.iter().for_each(|o| o.curves(a, out)),
            SetKind::WholeSpace => {}
            SetKind::Translate { base, shift } => base.curves([a[0] + shift[0], a[1] + shift[1]], out),
        }
    }

    /// Whether every piece of the set is planar and curve-bounded.
    pub(crate) fn planar(&self) -> bool {
        match &self.kind {
            SetKind::Halfspace { normal, .. } => normal.len() == 2,
            SetKind::PolyGraph { .. } | SetKind::PolySublevel { .. } | SetKind::WholeSpace => true,
            SetKind::Union(s) | SetKind::Intersection(s) => s.iter().all(|o| o.planar()),
            SetKind::Translate { base, shift } => shift.len() == 2 && base.planar(),
        }
    }

    /// Points of the set's boundary curves within `radius` of `center`,
    /// concentrated geometrically towards `center`.
    pub fn boundary_samples(&self, center: &[f64], radius: f64, levels: usize) -> Vec<Vec<f64>> {
        if !self.planar() || center.len() != 2 {
            return vec![];
        }
        let mut cs = Vec::new();
        self.curves([0.0, 0.0], &mut cs);
        let mut ts = vec![0.0];
        for k in 0..levels {
            let t = radius * 0.5f64.powi(k as i32);
            ts.push(t);
            ts.push(-t);
            ts.push(0.7 * t);
            ts.push(-0.7 * t);
        }
        let mut out: Vec<Vec<f64>> = Vec::new();
        let mut push = |p: [f64; 2]| {
            let d = (p[0] - center[0]).hypot(p[1] - center[1]);
            if d <= radius && self.contains(&p) {
                out.push(p.to_vec());
            }
        };
        for c in &cs {
            c.sample_near(center, &ts).into_iter().for_each(&mut push);
            c.stationary(center).into_iter().for_each(&mut push);
        }
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                cs[i].meet(&cs[j]).into_iter().for_each(&mut push);
            }
        }
        out
    }
}

impl SetOracle {
    /// Points of the boundary curves, lying in the set, at which the distance
    /// to `x` is stationary. Nearest boundary points are among them.
    pub fn boundary_stationary(&self, x: &[f64]) -> Vec<Vec<f64>> {
        if !self.planar() || x.len() != 2 {
            return vec![];
        }
        let mut cs = Vec::new();
        self.curves([0.0, 0.0], &mut cs);
        let mut out: Vec<Vec<f64>> = Vec::new();
        for c in &cs {
            for p in c.stationary(x) {
                if p[0].is_finite() && p[1].is_finite() && self.contains(&p) && !out.iter().any(|q| (q[0] - p[0]).hypot(q[1] - p[1]) <= 1e-14) {
                    out.push(p.to_vec());
                }
            }
        }
        out
    }
}
