//! Metric moduli of a map at its base pair.

use super::SetValuedMap;
use crate::error::{Error, Result};
use crate::geometry::add;
use crate::moduli::sampler::{Blocks, Domain, Search};
use crate::moduli::{salt, scan, shell_notes, MapModulusEstimate, ModulusEstimate, ModulusKind, RadiusSchedule, TracePoint};

const EXCLUDE: f64 = 1e-12;

fn ratio(num: f64, d: f64) -> Option<f64> {
    if d <= EXCLUDE {
        None
    } else if d.is_infinite() {
        Some(0.0)
    } else {
        Some(num / d)
    }
}

/// Sampled configuration as an absolute `(x, y)` pair.
fn pair(map: &SetValuedMap, kind: ModulusKind, b: &Blocks) -> (Vec<f64>, Vec<f64>) {
    let flat = |bs: &[Vec<f64>]| -> Vec<f64> { bs.iter().flatten().copied().collect() };
    match kind {
        ModulusKind::MapSemi => (map.x_bar.clone(), add(&map.y_bar, &flat(b))),
        ModulusKind::MapSub => (add(&map.x_bar, &b[0]), map.y_bar.clone()),
        _ => (add(&map.x_bar, &b[0]), add(&map.y_bar, &flat(&b[1..]))),
    }
}

fn quotient(map: &SetValuedMap, kind: ModulusKind, q: f64, b: &Blocks) -> Result<Option<f64>> {
    let (x, y) = pair(map, kind, b);
    let d = map.inverse_distance(&x, &y)?;
    if d <= EXCLUDE {
        return Ok(None);
    }
    let num = match kind {
        ModulusKind::MapSemi => map.range_distance(&y, &map.y_bar),
        _ => map.forward_distance(&x, &y)?,
    };
    Ok(ratio(num.powf(q), d))
}

/// Liminf of the map quotient of `kind` as the sampled `x`, `y` or `(x, y)`
/// shrinks to the base pair; `X × Y` carries the max norm.
pub fn map_modulus(map: &SetValuedMap, q: f64, kind: ModulusKind, cfg: &RadiusSchedule) -> Result<MapModulusEstimate> {
    cfg.validate()?;
    if !(q > 0.0) {
        return Err(Error::Invalid(format!("q must be positive, got {q}")));
    }
    let range = map.range_blocks();
    let dims = match kind {
        ModulusKind::MapSemi => range,
        ModulusKind::MapSub => vec![map.domain.dim],
        ModulusKind::MapReg => [vec![map.domain.dim], range].concat(),
        other => return Err(Error::Invalid(format!("`{}` is not a map modulus kind", other.name()))),
    };
    let domain = Domain::new(dims);
    let f = |b: &Blocks| quotient(map, kind, q, b);
    let radii = cfg.radii();
    let shells = scan(&domain, &radii, cfg.shrink, cfg, salt(kind), &Search::default(), &f);
    let notes = shell_notes(&shells);
    let trace = radii
        .iter()
        .zip(shells)
        .map(|(&rho, s)| TracePoint {
            rho,
            quotient: s.best,
            witness: s
                .witness
                .map(|b| {
                    let (x, y) = pair(map, kind, &b);
                    vec![x, y]
                })
                .unwrap_or_default(),
        })
        .collect();
    Ok(ModulusEstimate::from_trace(kind, q, trace, notes))
}
