//! Set-valued maps `F: X ⇉ Y`, their regularity moduli, and the two
//! constructions linking maps and collections.

mod bridge;
mod modulus;

pub use bridge::{bridge_check, collection_to_map, map_to_collection, BridgeReport, SandwichRow};
pub use modulus::map_modulus;

use crate::error::{Error, Result};
use crate::geometry::{add, dist, intersection_distance_shifted, GeomCfg, SetCollection, SetOracle, SpaceConfig};
use crate::poly;

#[derive(Clone, Debug, PartialEq)]
pub enum MapKind {
    /// `F(x) = {p(x)}` on the real line, coefficients ascending.
    SingleValuedPoly { coeffs: Vec<f64> },
    /// `F(x) = (Ω_1 − x) × … × (Ω_m − x)`.
    ProductOfTranslates { coll: SetCollection },
    /// `gr F` given as a set in `X × Y`.
    GraphOracle { graph: SetOracle },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetValuedMap {
    pub kind: MapKind,
    pub domain: SpaceConfig,
    pub range: SpaceConfig,
    pub x_bar: Vec<f64>,
    pub y_bar: Vec<f64>,
}

const ON_GRAPH: f64 = 1e-9;

impl SetValuedMap {
    /// `F(x) = {p(x)}` at `(x̄, p(x̄))`.
    pub fn poly(coeffs: Vec<f64>, x_bar: f64) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Invalid("polynomial needs finite coefficients".into()));
        }
        let y = poly::eval(&coeffs, x_bar);
        Ok(Self {
            kind: MapKind::SingleValuedPoly { coeffs },
            domain: SpaceConfig::new(1)?,
            range: SpaceConfig::new(1)?,
            x_bar: vec![x_bar],
            y_bar: vec![y],
        })
    }

    pub fn identity() -> Self {
        Self::poly(vec![0.0, 1.0], 0.0).unwrap()
    }

    /// A map given by its graph in `ℝ^{dim_x} × ℝ^{dim_y}`.
    pub fn from_graph(graph: SetOracle, dim_x: usize, x_bar: Vec<f64>, y_bar: Vec<f64>) -> Result<Self> {
        if x_bar.len() != dim_x {
            return Err(Error::Dimension { expected: dim_x, got: x_bar.len() });
        }
        let range = SpaceConfig::new(y_bar.len())?;
        graph.check_dim(dim_x + range.dim)?;
        let map = Self { kind: MapKind::GraphOracle { graph }, domain: SpaceConfig::new(dim_x)?, range, x_bar, y_bar };
        map.check_base()?;
        Ok(map)
    }

    fn check_base(&self) -> Result<()> {
        let d = self.forward_distance(&self.x_bar, &self.y_bar)?;
        if d > ON_GRAPH {
            return Err(Error::BasePoint { set: 0, dist: d });
        }
        Ok(())
    }

    /// Block sizes of `Y`; distances in `Y` are the max over blocks.
    pub fn range_blocks(&self) -> Vec<usize> {
        match &self.kind {
            MapKind::ProductOfTranslates { coll } => vec![coll.dim(); coll.m()],
            _ => vec![self.range.dim],
        }
    }

    pub fn range_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut at = 0;
        let mut top = 0.0f64;
        for d in self.range_blocks() {
            top = top.max(dist(&a[at..at + d], &b[at..at + d]));
            at += d;
        }
        top
    }

    fn check_point(&self, x: &[f64], y: &[f64]) -> Result<()> {
        if x.len() != self.domain.dim {
            return Err(Error::Dimension { expected: self.domain.dim, got: x.len() });
        }
        if y.len() != self.range.dim {
            return Err(Error::Dimension { expected: self.range.dim, got: y.len() });
        }
        Ok(())
    }

    /// `d(y, F(x))`; `+∞` when `F(x)` is empty.
    pub fn forward_distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_point(x, y)?;
        match &self.kind {
            MapKind::SingleValuedPoly { coeffs } => Ok((y[0] - poly::eval(coeffs, x[0])).abs()),
            MapKind::ProductOfTranslates { coll } => {
                let n = coll.dim();
                let mut top = 0.0f64;
                for (i, s) in coll.sets.iter().enumerate() {
                    top = top.max(s.distance(&add(x, &y[i * n..(i + 1) * n]))?);
                }
                Ok(top)
            }
            MapKind::GraphOracle { graph } => slice_distance(graph, x, y, true),
        }
    }

    /// `d(x, F⁻¹(y))`; `+∞` when `F⁻¹(y)` is empty.
    pub fn inverse_distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_point(x, y)?;
        match &self.kind {
            MapKind::SingleValuedPoly { coeffs } => {
                let mut c = coeffs.clone();
                c[0] -= y[0];
                let c = poly::trim(&c);
                if c.len() == 1 {
                    return Ok(if c[0] == 0.0 { 0.0 } else { f64::INFINITY });
                }
                Ok(poly::real_roots(&c).into_iter().map(|t| (x[0] - t).abs()).fold(f64::INFINITY, f64::min))
            }
            MapKind::ProductOfTranslates { coll } => {
                let n = coll.dim();
                let shifts: Vec<Vec<f64>> = y.chunks(n).map(|c| c.to_vec()).collect();
                Ok(intersection_distance_shifted(&coll.sets, &shifts, x, &GeomCfg::default())?.value)
            }
            MapKind::GraphOracle { graph } => slice_distance(graph, x, y, false),
        }
    }

    /// `(x, y) ∈ gr F` up to tolerance.
    pub fn on_graph(&self, x: &[f64], y: &[f64]) -> Result<bool> {
        Ok(self.forward_distance(x, y)? <= ON_GRAPH)
    }
}

/// Distance from `(x, y)` to the graph within the fibre that fixes `x`
/// (`fix_x`) or `y`, computed as an intersection distance in `X × Y`.
fn slice_distance(graph: &SetOracle, x: &[f64], y: &[f64], fix_x: bool) -> Result<f64> {
    let n = x.len();
    let p: Vec<f64> = x.iter().chain(y).copied().collect();
    let (from, to) = if fix_x { (0, n) } else { (n, p.len()) };
    let mut sets = vec![graph.clone()];
    for j in from..to {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; p.len()];
            e[j] = s;
            sets.push(SetOracle::halfspace(e, s * p[j])?);
        }
    }
    let zero = vec![vec![0.0; p.len()]; sets.len()];
    Ok(intersection_distance_shifted(&sets, &zero, &p, &GeomCfg::default())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_distances() {
        let f = SetValuedMap::poly(vec![0.0, 0.0, 1.0], 0.0).unwrap();
        assert_eq!(f.forward_distance(&[0.5], &[0.0]).unwrap(), 0.25);
        assert!((f.inverse_distance(&[0.0], &[0.25]).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(f.inverse_distance(&[0.3], &[0.0]).unwrap(), 0.3);
        assert!(f.inverse_distance(&[0.0], &[-0.1]).unwrap().is_infinite());
    }

    #[test]
    fn constant_map_inverse() {
        let f = SetValuedMap::poly(vec![2.0], 0.0).unwrap();
        assert_eq!(f.inverse_distance(&[5.0], &[2.0]).unwrap(), 0.0);
        assert!(f.inverse_distance(&[5.0], &[1.0]).unwrap().is_infinite());
    }
}
