//! Dual side: Fréchet and proximal normals, the duality map of the max
//! product norm, and sampled dual criteria.

mod cone;
mod criterion;
mod duality;
mod proximal;

pub use cone::{frechet_normal_cone, NormalCone};
pub use criterion::{dual_modulus, dual_trend, DualCfg, DualCriterionReport, DualKind, DualRadii};
pub use duality::{duality_map_check, duality_map_sample};
pub use proximal::{proximal_normals, ProximalCfg};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeType {
    Trivial,
    Ray,
    Wedge,
    Line,
    HalfplaneOfDirections,
    Whole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalKind {
    Frechet,
    Proximal,
}

/// A unit normal direction at `base`; `scale` multiplies it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalVector {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
    pub kind: NormalKind,
    pub scale: f64,
    /// Proximal normals: the largest grid radius certifying it.
    pub witness_r: Option<f64>,
}
