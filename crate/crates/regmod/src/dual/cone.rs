//! Fréchet normal cones of the built-in sets.
//!
//! Planar cones are kept as arcs of directions. A union's cone is the
//! intersection of the cones of the members containing the point; an
//! intersection's cone is the sum of its members' cones.

use super::{ConeType, NormalKind, NormalVector};
use crate::error::{Error, Result};
use crate::geometry::{add, dot, norm, SetKind, SetOracle, Side};
use serde::Serialize;
use std::f64::consts::{PI, TAU};

const EPS: f64 = 1e-9;

fn wrap(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU - 1e-15 {
        0.0
    } else {
        r
    }
}

fn angle(v: &[f64]) -> f64 {
    wrap(v[1].atan2(v[0]))
}

fn unit(a: f64) -> Vec<f64> {
    vec![a.cos(), a.sin()]
}

/// Closed convex cone in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Cone2 {
    Zero,
    /// Directions `[a, a + w]`, `0 ≤ w ≤ π`.
    Arc { a: f64, w: f64 },
    Line { a: f64 },
    Plane,
}

impl Cone2 {
    fn ray(v: &[f64]) -> Self {
        Cone2::Arc { a: angle(v), w: 0.0 }
    }

    /// Arcs of the unit circle covered by the cone.
    fn arcs(&self) -> Vec<(f64, f64)> {
        match *self {
            Cone2::Zero => vec![],
            Cone2::Arc { a, w } => vec![(a, w)],
            Cone2::Line { a } => vec![(a, 0.0), (wrap(a + PI), 0.0)],
            Cone2::Plane => vec![(0.0, TAU)],
        }
    }

    /// Conic hull of finitely many directions.
    fn hull(angles: &[f64]) -> Self {
        let mut s: Vec<f64> = angles.iter().map(|&a| wrap(a)).collect();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        s.dedup_by(|a, b| (*a - *b).abs() <= EPS);
        if s.len() > 1 && (s[0] + TAU - s[s.len() - 1]) <= EPS {
            s.pop();
        }
        match s.len() {
            0 => return Cone2::Zero,
            1 => return Cone2::Arc { a: s[0], w: 0.0 },
            _ => {}
        }
        let n = s.len();
        let (mut gap, mut at) = (-1.0, 0);
        for i in 0..n {
            let g = if i + 1 < n { s[i + 1] - s[i] } else { s[0] + TAU - s[i] };
            if g > gap {
                gap = g;
                at = (i + 1) % n;
            }
        }
        if gap > PI + EPS {
            return Cone2::Arc { a: s[at], w: TAU - gap };
        }
        if gap >= PI - EPS {
            let a = s[at];
            let on_line = s.iter().all(|&b| {
                let d = wrap(b - a);
                d <= EPS || (d - PI).abs() <= EPS || d >= TAU - EPS
            });
            return if on_line { Cone2::Line { a } } else { Cone2::Arc { a, w: PI } };
        }
        Cone2::Plane
    }

    /// Directions spanning the cone: arc ends and midpoints.
    fn spanning(&self) -> Vec<f64> {
        match *self {
            Cone2::Zero => vec![],
            Cone2::Arc { a, w } => vec![a, a + 0.5 * w, a + w],
            Cone2::Line { a } => vec![a, a + PI],
            Cone2::Plane => vec![0.0, 0.5 * PI, PI, 1.5 * PI],
        }
    }

    fn intersect(&self, other: &Cone2) -> Cone2 {
        if *self == Cone2::Plane {
            return *other;
        }
        if *other == Cone2::Plane {
            return *self;
        }
        let mut dirs = Vec::new();
        for (a1, w1) in self.arcs() {
            for (a2, w2) in other.arcs() {
                let d = wrap(a2 - a1);
                for start in [d, d - TAU] {
                    let lo = start.max(0.0);
                    let hi = (start + w2).min(w1);
                    if hi >= lo - EPS {
                        let hi = hi.max(lo);
                        dirs.extend([a1 + lo, a1 + 0.5 * (lo + hi), a1 + hi]);
                    }
                }
            }
        }
        Cone2::hull(&dirs)
    }

    fn sum(cones: &[Cone2]) -> Cone2 {
        if cones.iter().any(|c| *c == Cone2::Plane) {
            return Cone2::Plane;
        }
        Cone2::hull(&cones.iter().flat_map(|c| c.spanning()).collect::<Vec<_>>())
    }
}

/// A Fréchet normal cone described by a shape tag and generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalCone {
    pub base: Vec<f64>,
    pub tag: ConeType,
    /// Ray: the ray. Wedge: its two edges. Line: both directions.
    /// Halfplane: the two boundary directions, then the inner normal.
    /// Whole: the four axis directions.
    pub generators: Vec<NormalVector>,
}

impl NormalCone {
    fn from_cone2(base: &[f64], c: Cone2) -> Self {
        let (tag, angles) = match c {
            Cone2::Zero => (ConeType::Trivial, vec![]),
            Cone2::Arc { a, w } if w <= EPS => (ConeType::Ray, vec![a]),
            Cone2::Arc { a, w } if w < PI - EPS => (ConeType::Wedge, vec![a, a + w]),
            Cone2::Arc { a, .. } => (ConeType::HalfplaneOfDirections, vec![a, a + PI, a + 0.5 * PI]),
            Cone2::Line { a } => (ConeType::Line, vec![a, a + PI]),
            Cone2::Plane => (ConeType::Whole, vec![0.0, 0.5 * PI, PI, 1.5 * PI]),
        };
        let generators = angles.into_iter().map(|a| NormalVector::frechet(base, unit(a))).collect();
        Self { base: base.to_vec(), tag, generators }
    }

    fn ray_nd(base: &[f64], d: Vec<f64>) -> Self {
        let l = norm(&d);
        let d = d.iter().map(|v| v / l).collect();
        Self { base: base.to_vec(), tag: ConeType::Ray, generators: vec![NormalVector::frechet(base, d)] }
    }

    fn trivial(base: &[f64]) -> Self {
        Self { base: base.to_vec(), tag: ConeType::Trivial, generators: vec![] }
    }

    fn gen(&self, k: usize) -> &[f64] {
        &self.generators[k].direction
    }

    /// Euclidean distance from `v` to the cone.
    pub fn distance(&self, v: &[f64]) -> f64 {
        let to_ray = |g: &[f64]| {
            let t = dot(v, g).max(0.0);
            v.iter().zip(g).map(|(a, b)| (a - t * b).powi(2)).sum::<f64>().sqrt()
        };
        match self.tag {
            ConeType::Trivial => norm(v),
            ConeType::Ray => to_ray(self.gen(0)),
            ConeType::Line => {
                let g = self.gen(0);
                let t = dot(v, g);
                v.iter().zip(g).map(|(a, b)| (a - t * b).powi(2)).sum::<f64>().sqrt()
            }
            ConeType::HalfplaneOfDirections => (-dot(v, self.gen(2))).max(0.0),
            ConeType::Wedge => {
                let (g1, g2) = (self.gen(0), self.gen(1));
                let cross = |a: &[f64], b: &[f64]| a[0] * b[1] - a[1] * b[0];
                if cross(g1, v) >= 0.0 && cross(v, g2) >= 0.0 {
                    0.0
                } else {
                    to_ray(g1).min(to_ray(g2))
                }
            }
            ConeType::Whole => 0.0,
        }
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        self.distance(v) <= 1e-9 * norm(v).max(1.0)
    }

    /// Unit directions of the cone: the generators plus, in the plane, every
    /// multiple of `step_deg` degrees inside the cone.
    pub fn directions(&self, step_deg: f64) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = match self.tag {
            ConeType::HalfplaneOfDirections => self.generators[..2].iter().map(|g| g.direction.clone()).collect(),
            ConeType::Whole => vec![],
            _ => self.generators.iter().map(|g| g.direction.clone()).collect(),
        };
        let spread = matches!(self.tag, ConeType::Wedge | ConeType::HalfplaneOfDirections | ConeType::Whole);
        if spread && self.base.len() == 2 {
            let n = (360.0 / step_deg).round() as usize;
            for k in 0..n {
                let e = unit((k as f64 * step_deg).to_radians());
                if self.contains(&e) && !out.iter().any(|d| (d[0] - e[0]).hypot(d[1] - e[1]) <= 1e-12) {
                    out.push(e);
                }
            }
        }
        out
    }
}

fn on_curve(c: &[f64; 3], x: &[f64], tol: f64) -> bool {
    let g = x[1] - (c[0] + x[0] * (c[1] + x[0] * c[2]));
    g.abs() <= tol * (1.0 + (c[1] + 2.0 * c[2] * x[0]).abs())
}

fn cone2(set: &SetOracle, w: &[f64]) -> Result<Cone2> {
    let tol = set.tol.max(1e-12);
    Ok(match &set.kind {
        SetKind::Halfspace { normal, offset } => {
            if dot(normal, w) - offset <= tol * norm(normal) {
                Cone2::ray(&[-normal[0], -normal[1]])
            } else {
                Cone2::Zero
            }
        }
        SetKind::PolyGraph { coeffs } => {
            let s = coeffs[1] + 2.0 * coeffs[2] * w[0];
            Cone2::Line { a: angle(&[s, -1.0]) }
        }
        SetKind::PolySublevel { coeffs, side } => {
            if !on_curve(coeffs, w, tol) {
                return Ok(Cone2::Zero);
            }
            let s = coeffs[1] + 2.0 * coeffs[2] * w[0];
            match side {
                Side::Below => Cone2::ray(&[-s, 1.0]),
                Side::Above => Cone2::ray(&[s, -1.0]),
            }
        }
        SetKind::Union(members) => {
            let mut c = Cone2::Plane;
            for m in members.iter().filter(|m| m.contains(w)) {
                c = c.intersect(&cone2(m, w)?);
            }
            c
        }
        SetKind::Intersection(members) => {
            let cs = members.iter().map(|m| cone2(m, w)).collect::<Result<Vec<_>>>()?;
            Cone2::sum(&cs)
        }
        SetKind::WholeSpace => Cone2::Zero,
        SetKind::Translate { base, shift } => cone2(base, &add(w, shift))?,
    })
}

fn cone_nd(set: &SetOracle, w: &[f64], base: &[f64]) -> Result<NormalCone> {
    match &set.kind {
        SetKind::Halfspace { normal, offset } => {
            if dot(normal, w) - offset <= set.tol.max(1e-12) * norm(normal) {
                Ok(NormalCone::ray_nd(base, normal.iter().map(|v| -v).collect()))
            } else {
                Ok(NormalCone::trivial(base))
            }
        }
        SetKind::WholeSpace => Ok(NormalCone::trivial(base)),
        SetKind::Translate { base: b, shift } => cone_nd(b, &add(w, shift), base),
        SetKind::Union(members) | SetKind::Intersection(members) => {
            let union = matches!(set.kind, SetKind::Union(_));
            let mut rays: Vec<NormalCone> = Vec::new();
            for m in members.iter().filter(|m| m.contains(w)) {
                let c = cone_nd(m, w, base)?;
                if c.tag == ConeType::Trivial {
                    if union {
                        return Ok(NormalCone::trivial(base));
                    }
                } else if !rays.iter().any(|r| norm(&crate::geometry::sub(r.gen(0), c.gen(0))) <= EPS) {
                    rays.push(c);
                }
            }
            match rays.len() {
                0 => Ok(NormalCone::trivial(base)),
                1 => Ok(rays.pop().unwrap()),
                _ if union => Ok(NormalCone::trivial(base)),
                _ => Err(Error::NoAnalyticOracle("polyhedral normal cone outside the plane".into())),
            }
        }
        _ => Err(Error::NoAnalyticOracle("normal cone of a non-planar set".into())),
    }
}

/// The Fréchet normal cone of `set` at `w`, computed analytically.
pub fn frechet_normal_cone(set: &SetOracle, w: &[f64]) -> Result<NormalCone> {
    if !set.contains(w) {
        return Err(Error::NotInSet(set.distance(w)?));
    }
    if w.len() == 2 && set.required_dim().map_or(true, |d| d == 2) {
        return Ok(NormalCone::from_cone2(w, cone2(set, w)?));
    }
    cone_nd(set, w, w)
}

impl NormalVector {
    pub(crate) fn frechet(base: &[f64], direction: Vec<f64>) -> Self {
        Self { base: base.to_vec(), direction, kind: NormalKind::Frechet, scale: 1.0, witness_r: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_shapes() {
        assert_eq!(Cone2::hull(&[]), Cone2::Zero);
        assert!(matches!(Cone2::hull(&[0.3]), Cone2::Arc { w, .. } if w == 0.0));
        assert!(matches!(Cone2::hull(&[0.0, PI]), Cone2::Line { .. }));
        assert!(matches!(Cone2::hull(&[0.0, 0.5 * PI, PI]), Cone2::Arc { w, .. } if (w - PI).abs() < 1e-12));
        assert_eq!(Cone2::hull(&[0.0, 2.0, 4.0]), Cone2::Plane);
        match Cone2::hull(&[6.0, 0.2]) {
            Cone2::Arc { a, w } => {
                assert!((a - 6.0).abs() < 1e-12);
                assert!((w - (0.2 + TAU - 6.0)).abs() < 1e-12);
            }
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn intersections() {
        let up = Cone2::ray(&[0.0, 1.0]);
        let right = Cone2::ray(&[1.0, 0.0]);
        assert_eq!(up.intersect(&right), Cone2::Zero);
        assert_eq!(up.intersect(&up), up);
        let upper = Cone2::Arc { a: 0.0, w: PI };
        let lower = Cone2::Arc { a: PI, w: PI };
        assert!(matches!(upper.intersect(&lower), Cone2::Line { .. }));
        let line = Cone2::Line { a: 0.5 * PI };
        assert!(matches!(line.intersect(&Cone2::Arc { a: 0.25 * PI, w: 0.5 * PI }), Cone2::Arc { w, .. } if w < 1e-12));
    }
}
