//! Euclidean factor spaces, closed-set oracles and intersection distances.

mod curves;
mod intersect;
mod oracle;
pub mod spec;

pub use intersect::{intersection_distance, intersection_distance_shifted, IntersectionDistance};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Max over factors of the Euclidean factor norms.
pub fn product_norm(xs: &[Vec<f64>]) -> f64 {
    xs.iter().map(|x| norm(x)).fold(0.0, f64::max)
}

/// Dual of the max product norm: sum of the factor norms.
pub fn dual_product_norm(xs: &[Vec<f64>]) -> f64 {
    xs.iter().map(|x| norm(x)).sum()
}

/// `max{‖x‖, ρ·max_i ‖x_i‖}`.
pub fn weighted_product_norm(x: &[f64], xs: &[Vec<f64>], rho: f64) -> f64 {
    assert!(rho > 0.0, "weight must be positive");
    norm(x).max(rho * product_norm(xs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FactorNorm {
    #[default]
    Euclidean,
}

/// A factor space ℝ^dim; products of factors always carry the max norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceConfig {
    pub dim: usize,
    #[serde(default)]
    pub factor_norm: FactorNorm,
}

impl SpaceConfig {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("space dimension must be at least 1".into()));
        }
        Ok(Self { dim, factor_norm: FactorNorm::Euclidean })
    }

    pub fn plane() -> Self {
        Self { dim: 2, factor_norm: FactorNorm::Euclidean }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeomCfg {
    /// Absolute membership tolerance.
    pub tol: f64,
    /// Probe radius for the interior test.
    pub interior_radius: f64,
    /// Largest accepted bracket width for non-analytic intersection distances.
    pub bracket_tol: f64,
}

impl Default for GeomCfg {
    fn default() -> Self {
        Self { tol: 1e-10, interior_radius: 1e-6, bracket_tol: 1e-7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `v ≤ p(u)`
    Below,
    /// `v ≥ p(u)`
    Above,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SetKind {
    /// `{x : ⟨normal, x⟩ ≥ offset}`
    Halfspace { normal: Vec<f64>, offset: f64 },
    /// Graph `{(u, p(u))}` of a polynomial of degree at most two, in ℝ².
    PolyGraph { coeffs: [f64; 3] },
    /// `{(u, v) : v ≤ p(u)}` or `{(u, v) : v ≥ p(u)}` in ℝ².
    PolySublevel { coeffs: [f64; 3], side: Side },
    Union(Vec<SetOracle>),
    Intersection(Vec<SetOracle>),
    WholeSpace,
    /// The set `base − shift`.
    Translate { base: Box<SetOracle>, shift: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetOracle {
    pub kind: SetKind,
    pub tol: f64,
}

impl SetOracle {
    fn new(kind: SetKind) -> Self {
        Self { kind, tol: GeomCfg::default().tol }
    }

    /// Sets the membership tolerance of this set and every member set.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.kind = match self.kind {
            SetKind::Union(s) => SetKind::Union(s.into_iter().map(|o| o.with_tol(tol)).collect()),
            SetKind::Intersection(s) => SetKind::Intersection(s.into_iter().map(|o| o.with_tol(tol)).collect()),
            SetKind::Translate { base, shift } => SetKind::Translate { base: Box::new(base.with_tol(tol)), shift },
            k => k,
        };
        self
    }

    pub fn halfspace(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if norm(&normal) == 0.0 {
            return Err(Error::Invalid("halfspace normal must be nonzero".into()));
        }
        Ok(Self::new(SetKind::Halfspace { normal, offset }))
    }

    pub fn poly_graph(coeffs: [f64; 3]) -> Self {
        Self::new(SetKind::PolyGraph { coeffs })
    }

    pub fn poly_sublevel(coeffs: [f64; 3], side: Side) -> Self {
        Self::new(SetKind::PolySublevel { coeffs, side })
    }

    pub fn union(sets: Vec<SetOracle>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Invalid("union needs at least one member".into()));
        }
        Ok(Self::new(SetKind::Union(sets)))
    }

    pub fn intersection(sets: Vec<SetOracle>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Invalid("intersection needs at least one member".into()));
        }
        Ok(Self::new(SetKind::Intersection(sets)))
    }

    pub fn whole_space() -> Self {
        Self::new(SetKind::WholeSpace)
    }

    /// The set `self − a`, so that `d(self − a, x) = d(self, x + a)`.
    pub fn translate(&self, a: &[f64]) -> Self {
        Self { kind: SetKind::Translate { base: Box::new(self.clone()), shift: a.to_vec() }, tol: self.tol }
    }

    /// Dimension forced by the set kind, if any.
    pub fn required_dim(&self) -> Option<usize> {
        match &self.kind {
            SetKind::Halfspace { normal, .. } => Some(normal.len()),
            SetKind::PolyGraph { .. } | SetKind::PolySublevel { .. } => Some(2),
            SetKind::Union(s) | SetKind::Intersection(s) => s.iter().find_map(|o| o.required_dim()),
            SetKind::WholeSpace => None,
            SetKind::Translate { base, shift } => base.required_dim().or(Some(shift.len())),
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        let bad = |expected: usize| -> Result<()> {
            if expected != dim {
                Err(Error::Dimension { expected: dim, got: expected })
            } else {
                Ok(())
            }
        };
        match &self.kind {
            SetKind::Halfspace { normal, .. } => bad(normal.len()),
            SetKind::PolyGraph { .. } | SetKind::PolySublevel { .. } => bad(2),
            SetKind::Union(s) | SetKind::Intersection(s) => s.iter().try_for_each(|o| o.check_dim(dim)),
            SetKind::WholeSpace => Ok(()),
            SetKind::Translate { base, shift } => {
                bad(shift.len())?;
                base.check_dim(dim)
            }
        }
    }
}

/// `m ≥ 2` closed sets with a common base point.
#[derive(Clone, Debug, PartialEq)]
pub struct SetCollection {
    pub sets: Vec<SetOracle>,
    pub base_point: Vec<f64>,
    pub space: SpaceConfig,
}

impl SetCollection {
    pub fn new(sets: Vec<SetOracle>, base_point: Vec<f64>) -> Result<Self> {
        let space = SpaceConfig::new(base_point.len())?;
        if sets.len() < 2 {
            return Err(Error::Invalid(format!("a collection needs m >= 2 sets, got {}", sets.len())));
        }
        for s in &sets {
            s.check_dim(space.dim)?;
        }
        for (i, s) in sets.iter().enumerate() {
            if !s.contains(&base_point) {
                return Err(Error::BasePoint { set: i, dist: s.distance(&base_point).unwrap_or(f64::NAN) });
            }
        }
        Ok(Self { sets, base_point, space })
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.sets.iter().all(|s| s.contains(x))
    }

    /// `max_i d(x, Ω_i)`.
    pub fn max_distance(&self, x: &[f64]) -> Result<f64> {
        let mut m = 0.0f64;
        for s in &self.sets {
            m = m.max(s.distance(x)?);
        }
        Ok(m)
    }

    /// Whether a small ball around the base point lies in every set.
    pub fn base_point_interior(&self, cfg: &GeomCfg) -> bool {
        self.sets.iter().all(|s| s.interior_at(&self.base_point, cfg))
    }
}

impl SetOracle {
    /// Whether the probe circle of radius `cfg.interior_radius` around `x`
    /// lies in the set.
    pub fn interior_at(&self, x: &[f64], cfg: &GeomCfg) -> bool {
        let r = cfg.interior_radius;
        probe_directions(x.len()).iter().all(|u| {
            let p: Vec<f64> = x.iter().zip(u).map(|(a, b)| a + r * b).collect();
            self.contains(&p)
        })
    }
}

/// Unit probe directions: coordinate axes, their negatives and, in the plane,
/// a 16-point circle.
pub fn probe_directions(dim: usize) -> Vec<Vec<f64>> {
    if dim == 2 {
        return (0..16)
            .map(|k| {
                let a = std::f64::consts::PI * k as f64 / 8.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
    }
    let mut out = Vec::new();
    for j in 0..dim {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[j] = s;
            out.push(e);
        }
    }
    let d = 1.0 / (dim as f64).sqrt();
    out.push(vec![d; dim]);
    out.push(vec![-d; dim]);
    out
}
