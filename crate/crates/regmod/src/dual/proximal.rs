use super::{frechet_normal_cone, NormalKind, NormalVector};
use crate::error::Result;
use crate::geometry::{probe_directions, SetOracle};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProximalCfg {
    /// Angular grid step for planar directions, in degrees.
    pub angle_step_deg: f64,
    /// Radii tried are `r_max·2^-k`, `k < levels`.
    pub r_max: f64,
    pub levels: usize,
    /// Relative tolerance of `|d(x̄ + r u, Ω) − r| ≤ tol·r`.
    pub rel_tol: f64,
}

impl Default for ProximalCfg {
    fn default() -> Self {
        Self { angle_step_deg: 1.0, r_max: 1.0, levels: 30, rel_tol: 1e-9 }
    }
}

/// Unit directions `u` with `d(x̄ + r u, Ω) = r` for some grid radius `r`,
/// each with the largest such `r` as witness.
pub fn proximal_normals(set: &SetOracle, xbar: &[f64], cfg: &ProximalCfg) -> Result<Vec<NormalVector>> {
    let mut cands: Vec<Vec<f64>> = if xbar.len() == 2 {
        let n = (360.0 / cfg.angle_step_deg).round() as usize;
        (0..n)
            .map(|k| {
                let a = (k as f64 * cfg.angle_step_deg).to_radians();
                vec![a.cos(), a.sin()]
            })
            .collect()
    } else {
        probe_directions(xbar.len())
    };
    // Proximal normals are Fréchet normals, so the analytic generators are
    // worth trying even off the grid.
    if let Ok(c) = frechet_normal_cone(set, xbar) {
        cands.extend(c.generators.into_iter().map(|g| g.direction));
    }
    let mut out: Vec<NormalVector> = Vec::new();
    for u in cands {
        if out.iter().any(|v| crate::geometry::dist(&v.direction, &u) <= 1e-12) {
            continue;
        }
        for k in 0..cfg.levels {
            let r = cfg.r_max * 0.5f64.powi(k as i32);
            let p: Vec<f64> = xbar.iter().zip(&u).map(|(a, b)| a + r * b).collect();
            if (set.distance(&p)? - r).abs() <= cfg.rel_tol * r {
                out.push(NormalVector { base: xbar.to_vec(), direction: u.clone(), kind: NormalKind::Proximal, scale: 1.0, witness_r: Some(r) });
                break;
            }
        }
    }
    Ok(out)
}
