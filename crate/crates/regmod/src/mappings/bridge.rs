//! Collections as maps and maps as collections.

use super::{map_modulus, MapKind, SetValuedMap};
use crate::error::{Error, Result};
use crate::geometry::{SetCollection, SetOracle, SpaceConfig};
use crate::moduli::{modulus, ModulusEstimate, ModulusKind, RadiusSchedule};
use serde::Serialize;

/// Absolute slack on both sandwich bounds, on top of the estimates' own
/// uncertainties.
pub const BRIDGE_TOL: f64 = 0.02;

/// `F(x) = (Ω_1 − x) × … × (Ω_m − x)` at `(x̄, 0)`.
pub fn collection_to_map(coll: &SetCollection) -> SetValuedMap {
    let (n, m) = (coll.dim(), coll.m());
    SetValuedMap {
        kind: MapKind::ProductOfTranslates { coll: coll.clone() },
        domain: coll.space,
        range: SpaceConfig { dim: n * m, factor_norm: coll.space.factor_norm },
        x_bar: coll.base_point.clone(),
        y_bar: vec![0.0; n * m],
    }
}

/// `{gr F, X × {ȳ}}` at `(x̄, ȳ)`. Distances in `X × Y` are Euclidean.
pub fn map_to_collection(map: &SetValuedMap) -> Result<SetCollection> {
    let n = map.domain.dim;
    let base: Vec<f64> = map.x_bar.iter().chain(&map.y_bar).copied().collect();
    let (graph, level) = match &map.kind {
        MapKind::SingleValuedPoly { coeffs } => {
            let c = crate::poly::trim(coeffs);
            if c.len() > 3 {
                return Err(Error::NoAnalyticOracle(format!("graph of a degree-{} polynomial", c.len() - 1)));
            }
            let mut k = [0.0; 3];
            k[..c.len()].copy_from_slice(&c);
            (SetOracle::poly_graph(k), SetOracle::poly_graph([map.y_bar[0], 0.0, 0.0]))
        }
        MapKind::GraphOracle { graph } => {
            let mut planes = Vec::new();
            for j in n..base.len() {
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; base.len()];
                    e[j] = s;
                    planes.push(SetOracle::halfspace(e, s * base[j])?);
                }
            }
            (graph.clone(), SetOracle::intersection(planes)?)
        }
        MapKind::ProductOfTranslates { .. } => {
            return Err(Error::NoAnalyticOracle("graph of a product-of-translates map".into()));
        }
    };
    SetCollection::new(vec![graph, level], base)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichRow {
    pub map: ModulusEstimate,
    pub collection: ModulusEstimate,
    /// `c/(c + 2^q)` and `c/2^q` at the ends of the map constant's interval.
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeReport {
    pub q: f64,
    /// Semi, sub, uniform.
    pub rows: Vec<SandwichRow>,
}

impl BridgeReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn lower_bound(c: f64, q: f64) -> f64 {
    if c.is_infinite() {
        1.0
    } else {
        c / (c + 2f64.powf(q))
    }
}

/// Map constants of `F` against the constants of `{gr F, X × {ȳ}}`, checking
/// `c/(c + 2^q) ≤ collection constant ≤ c/2^q` for each of the three kinds.
pub fn bridge_check(map: &SetValuedMap, q: f64, cfg: &RadiusSchedule) -> Result<BridgeReport> {
    let coll = map_to_collection(map)?;
    let pairs = [
        (ModulusKind::MapSemi, ModulusKind::Semi),
        (ModulusKind::MapSub, ModulusKind::Sub),
        (ModulusKind::MapReg, ModulusKind::Uniform),
    ];
    let mut rows = Vec::with_capacity(3);
    for (mk, ck) in pairs {
        let f = map_modulus(map, q, mk, cfg)?;
        let c = modulus(&coll, q, ck, cfg)?;
        let lower = lower_bound(f.lower(), q);
        let upper = f.upper() / 2f64.powf(q);
        let pass = c.upper() >= lower - BRIDGE_TOL && c.lower() <= upper + BRIDGE_TOL;
        rows.push(SandwichRow { map: f, collection: c, lower, upper, pass });
    }
    Ok(BridgeReport { q, rows })
}
