use super::{modulus, ModulusEstimate, ModulusKind, RadiusSchedule, Verdict};
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: f64,
    pub verdict: Verdict,
    pub estimate: ModulusEstimate,
    /// Set when the raw verdict broke the positive-then-zero pattern.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalExponent {
    /// Largest grid `q` with a positive (or divergent) constant.
    pub q_star: Option<f64>,
    pub rows: Vec<SweepRow>,
}

/// Runs `modulus` over an ascending `q` grid. The constants weaken as `q`
/// grows, so verdicts must read positive/divergent first and zero after;
/// positive entries past the first non-positive one become inconclusive.
pub fn critical_exponent(coll: &crate::geometry::SetCollection, kind: ModulusKind, q_grid: &[f64], cfg: &RadiusSchedule) -> Result<CriticalExponent> {
    if q_grid.is_empty() {
        return Err(Error::Invalid("q grid is empty".into()));
    }
    if q_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Invalid("q grid must be strictly ascending".into()));
    }
    let mut rows = Vec::with_capacity(q_grid.len());
    for &q in q_grid {
        let estimate = modulus(coll, q, kind, cfg)?;
        rows.push(SweepRow { q, verdict: estimate.verdict, estimate, flagged: false });
    }
    let first_off = rows.iter().position(|r| !r.estimate.is_positive());
    if let Some(j) = first_off {
        for r in rows.iter_mut().skip(j + 1) {
            if r.estimate.is_positive() {
                r.verdict = Verdict::Inconclusive;
                r.flagged = true;
            }
        }
    }
    let q_star = match first_off {
        Some(0) => None,
        Some(j) => Some(rows[j - 1].q),
        None => Some(rows.last().unwrap().q),
    };
    Ok(CriticalExponent { q_star, rows })
}
