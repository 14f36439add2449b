//! Primal estimators: radius functions, the three [q]-constants, metric
//! inequality checks, the slope constant and q-sweeps.

mod classify;
mod quotient;
mod radius;
pub(crate) mod sampler;
mod slope;
mod sweep;

pub use classify::{classify, Classification, ZERO_FLOOR};
pub use quotient::{check_metric_inequality, modulus, quotient_infimum, semi_quotient, sub_quotient, uniform_quotient};
pub(crate) use quotient::{salt, scan, shell_notes};
pub use radius::{theta_rho, zeta_rho_delta, RadiusEstimate, ThetaMethod};
pub use slope::slope_modulus;
pub use sweep::{critical_exponent, CriticalExponent, SweepRow};

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadiusSchedule {
    pub rho0: f64,
    pub shrink: f64,
    pub steps: usize,
    pub samples_per_radius: usize,
    pub seed: u64,
}

impl Default for RadiusSchedule {
    fn default() -> Self {
        Self { rho0: 0.5, shrink: 0.5, steps: 8, samples_per_radius: 2000, seed: 42 }
    }
}

impl RadiusSchedule {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho0 > 0.0) || !self.rho0.is_finite() {
            return Err(Error::Invalid(format!("rho0 must be positive, got {}", self.rho0)));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::Invalid(format!("shrink must lie in (0,1), got {}", self.shrink)));
        }
        if self.steps < 4 {
            return Err(Error::Invalid(format!("steps must be at least 4, got {}", self.steps)));
        }
        if self.samples_per_radius == 0 {
            return Err(Error::Invalid("samples_per_radius must be positive".into()));
        }
        if self.rho0 * self.shrink.powi(self.steps as i32) <= f64::EPSILON {
            return Err(Error::Invalid("rho0·shrink^steps underflows machine epsilon".into()));
        }
        Ok(())
    }

    /// Radii `ρ_k = rho0·shrink^k`, `k = 0..steps`.
    pub fn radii(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.rho0 * self.shrink.powi(k as i32)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusKind {
    Semi,
    Sub,
    Uniform,
    Slope,
    MapSemi,
    MapSub,
    MapReg,
}

impl ModulusKind {
    pub fn name(self) -> &'static str {
        match self {
            ModulusKind::Semi => "semi",
            ModulusKind::Sub => "sub",
            ModulusKind::Uniform => "uniform",
            ModulusKind::Slope => "slope",
            ModulusKind::MapSemi => "map_semi",
            ModulusKind::MapSub => "map_sub",
            ModulusKind::MapReg => "map_reg",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.trim().to_ascii_lowercase().as_str() {
            "semi" | "theta" => ModulusKind::Semi,
            "sub" | "zeta" => ModulusKind::Sub,
            "uniform" | "theta_hat" => ModulusKind::Uniform,
            "slope" => ModulusKind::Slope,
            "map_semi" => ModulusKind::MapSemi,
            "map_sub" => ModulusKind::MapSub,
            "map_reg" => ModulusKind::MapReg,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Zero,
    Positive,
    Divergent,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::Positive => "positive",
            Verdict::Divergent => "divergent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub rho: f64,
    pub quotient: f64,
    /// Configuration attaining the shell minimum, block by block.
    pub witness: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusEstimate {
    pub kind: ModulusKind,
    pub q: f64,
    pub trace: Vec<TracePoint>,
    /// `+∞` for divergent traces and empty sampled domains.
    pub value: f64,
    pub verdict: Verdict,
    pub uncertainty: f64,
    pub notes: Vec<String>,
}

impl ModulusEstimate {
    /// Positive or divergent: the constant is bounded away from zero.
    pub fn is_positive(&self) -> bool {
        matches!(self.verdict, Verdict::Positive | Verdict::Divergent)
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.uncertainty).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.value + self.uncertainty
    }

    pub(crate) fn from_trace(kind: ModulusKind, q: f64, trace: Vec<TracePoint>, mut notes: Vec<String>) -> Self {
        let qs: Vec<(f64, f64)> = trace.iter().map(|t| (t.rho, t.quotient)).collect();
        let c = classify(&qs);
        if let Some(n) = c.note {
            notes.push(n.into());
        }
        Self { kind, q, trace, value: c.value, verdict: c.verdict, uncertainty: c.uncertainty, notes }
    }
}

pub type MapModulusEstimate = ModulusEstimate;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub kind: ModulusKind,
    pub gamma: f64,
    pub delta: f64,
    pub q: f64,
    pub worst_ratio: f64,
    pub witness: Vec<Vec<f64>>,
    pub pass: bool,
    pub samples: usize,
}
