//! The duality mapping of `X^m` under the max norm: unit functionals with
//! the mass spread over the components of largest norm, each aligned with
//! its component.

use crate::error::{Error, Result};
use crate::geometry::{dot, norm, product_norm};

const TOL: f64 = 1e-9;

/// Whether `xs_star ∈ J(xs)`.
pub fn duality_map_check(xs: &[Vec<f64>], xs_star: &[Vec<f64>]) -> bool {
    if xs.len() != xs_star.len() || xs.iter().zip(xs_star).any(|(a, b)| a.len() != b.len()) {
        return false;
    }
    let top = product_norm(xs);
    let mass: f64 = xs_star.iter().map(|v| norm(v)).sum();
    if (mass - 1.0).abs() > TOL {
        return false;
    }
    xs.iter().zip(xs_star).all(|(x, s)| {
        let ns = norm(s);
        if ns <= TOL {
            return true;
        }
        let nx = norm(x);
        nx >= top - TOL * top.max(1.0) && (dot(s, x) - ns * nx).abs() <= TOL * (1.0 + ns * nx)
    })
}

/// Extreme points of `J(xs)` (all mass on one maximal component) followed by
/// the uniform mixture when several components are maximal.
pub fn duality_map_sample(xs: &[Vec<f64>]) -> Result<Vec<Vec<Vec<f64>>>> {
    let top = product_norm(xs);
    if top == 0.0 {
        return Err(Error::ZeroDualityInput);
    }
    let maximal: Vec<usize> = (0..xs.len()).filter(|&i| norm(&xs[i]) >= top * (1.0 - 1e-12)).collect();
    let build = |w: &dyn Fn(usize) -> f64| -> Vec<Vec<f64>> {
        xs.iter()
            .enumerate()
            .map(|(i, x)| {
                let s = w(i) / norm(x).max(f64::MIN_POSITIVE);
                x.iter().map(|v| if w(i) == 0.0 { 0.0 } else { v * s }).collect()
            })
            .collect()
    };
    let mut out: Vec<Vec<Vec<f64>>> = maximal.iter().map(|&k| build(&|i| if i == k { 1.0 } else { 0.0 })).collect();
    if maximal.len() > 1 {
        let share = 1.0 / maximal.len() as f64;
        out.push(build(&|i| if maximal.contains(&i) { share } else { 0.0 }));
    }
    Ok(out)
}
