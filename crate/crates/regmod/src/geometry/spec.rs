//! JSON set specifications and the built-in presets.
//!
//! ```json
//! {"space":{"dim":2},"sets":[{"kind":"halfspace","normal":[0,1],"offset":0},
//!   {"kind":"poly_sublevel","coeffs":[0,0,1],"side":"below"}],"point":[0,0]}
//! ```

use super::{SetCollection, SetOracle, Side};
use crate::error::{Error, Result};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceSpec {
    dim: usize,
    #[serde(default, alias = "norm")]
    factor_norm: Option<String>,
    #[serde(default)]
    product_norm: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SetSpec {
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
        #[serde(default)]
        tol: Option<f64>,
    },
    PolyGraph {
        #[serde(default)]
        coeffs: Option<Vec<f64>>,
        #[serde(default)]
        coefficient: Option<f64>,
        #[serde(default)]
        sign: Option<f64>,
        #[serde(default)]
        tol: Option<f64>,
    },
    PolySublevel {
        #[serde(default)]
        coeffs: Option<Vec<f64>>,
        #[serde(default)]
        coefficient: Option<f64>,
        #[serde(default)]
        sign: Option<f64>,
        side: Side,
        #[serde(default)]
        tol: Option<f64>,
    },
    Union {
        sets: Vec<SetSpec>,
    },
    Intersection {
        sets: Vec<SetSpec>,
    },
    WholeSpace {},
    Translate {
        base: Box<SetSpec>,
        shift: Vec<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CollectionSpec {
    space: SpaceSpec,
    sets: Vec<SetSpec>,
    point: Vec<f64>,
}

fn quad_coeffs(coeffs: Option<Vec<f64>>, coefficient: Option<f64>, sign: Option<f64>) -> Result<[f64; 3]> {
    match (coeffs, coefficient) {
        (Some(c), None) => {
            if c.is_empty() || c.len() > 3 {
                return Err(Error::Parse(format!("coeffs must have 1 to 3 entries, got {}", c.len())));
            }
            let mut out = [0.0; 3];
            out[..c.len()].copy_from_slice(&c);
            Ok(out)
        }
        (None, Some(a)) => {
            let s = sign.unwrap_or(1.0);
            if s != 1.0 && s != -1.0 {
                return Err(Error::Parse(format!("sign must be 1 or -1, got {s}")));
            }
            Ok([0.0, 0.0, s * a])
        }
        _ => Err(Error::Parse("give either `coeffs` or `coefficient` (with optional `sign`)".into())),
    }
}

fn build(s: SetSpec) -> Result<SetOracle> {
    let with = |o: SetOracle, tol: Option<f64>| match tol {
        Some(t) if t > 0.0 => Ok(o.with_tol(t)),
        Some(t) => Err(Error::Parse(format!("tolerance must be positive, got {t}"))),
        None => Ok(o),
    };
    match s {
        SetSpec::Halfspace { normal, offset, tol } => {
            with(SetOracle::halfspace(normal, offset).map_err(|e| Error::Parse(e.to_string()))?, tol)
        }
        SetSpec::PolyGraph { coeffs, coefficient, sign, tol } => {
            with(SetOracle::poly_graph(quad_coeffs(coeffs, coefficient, sign)?), tol)
        }
        SetSpec::PolySublevel { coeffs, coefficient, sign, side, tol } => {
            with(SetOracle::poly_sublevel(quad_coeffs(coeffs, coefficient, sign)?, side), tol)
        }
        SetSpec::Union { sets } => {
            SetOracle::union(sets.into_iter().map(build).collect::<Result<_>>()?).map_err(|e| Error::Parse(e.to_string()))
        }
        SetSpec::Intersection { sets } => SetOracle::intersection(sets.into_iter().map(build).collect::<Result<_>>()?)
            .map_err(|e| Error::Parse(e.to_string())),
        SetSpec::WholeSpace {} => Ok(SetOracle::whole_space()),
        SetSpec::Translate { base, shift } => Ok(build(*base)?.translate(&shift)),
    }
}

/// Parses a set specification. Syntax and schema problems are `Error::Parse`;
/// a base point outside some set is `Error::BasePoint`.
pub fn parse_collection(text: &str) -> Result<SetCollection> {
    let spec: CollectionSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(n) = &spec.space.factor_norm {
        if !n.eq_ignore_ascii_case("euclidean") {
            return Err(Error::Parse(format!("unsupported factor norm `{n}` (only euclidean)")));
        }
    }
    if let Some(n) = &spec.space.product_norm {
        if !n.eq_ignore_ascii_case("max") {
            return Err(Error::Parse(format!("unsupported product norm `{n}` (only max)")));
        }
    }
    if spec.space.dim == 0 {
        return Err(Error::Parse("space.dim must be at least 1".into()));
    }
    if spec.point.len() != spec.space.dim {
        return Err(Error::Parse(format!("point has {} coordinates, space.dim is {}", spec.point.len(), spec.space.dim)));
    }
    let sets: Vec<SetOracle> = spec.sets.into_iter().map(build).collect::<Result<_>>()?;
    for (i, s) in sets.iter().enumerate() {
        s.check_dim(spec.space.dim).map_err(|e| Error::Parse(format!("sets[{i}]: {e}")))?;
    }
    if sets.len() < 2 {
        return Err(Error::Parse(format!("need at least 2 sets, got {}", sets.len())));
    }
    SetCollection::new(sets, spec.point)
}

pub const PRESETS: [&str; 5] = ["example-2.1", "example-2.2", "example-2.3", "example-2.4", "orthogonal-halfspaces"];

/// Canonical preset name for `2.1`, `example-2.1`, `orthogonal`, and so on.
pub fn preset_name(id: &str) -> Option<&'static str> {
    let id = id.trim().to_ascii_lowercase();
    let id = id.strip_prefix("example-").or_else(|| id.strip_prefix("example")).unwrap_or(&id).to_string();
    match id.as_str() {
        "2.1" => Some(PRESETS[0]),
        "2.2" => Some(PRESETS[1]),
        "2.3" => Some(PRESETS[2]),
        "2.4" => Some(PRESETS[3]),
        "orthogonal-halfspaces" | "orthogonal" | "halfspaces" => Some(PRESETS[4]),
        _ => None,
    }
}

fn left() -> SetOracle {
    SetOracle::halfspace(vec![-1.0, 0.0], 0.0).unwrap()
}

pub fn preset(id: &str) -> Option<SetCollection> {
    let up = SetOracle::halfspace(vec![0.0, 1.0], 0.0).unwrap();
    let sets = match preset_name(id)? {
        "example-2.1" => vec![up, SetOracle::poly_sublevel([0.0, 0.0, 1.0], Side::Below)],
        "example-2.2" => vec![SetOracle::poly_graph([0.0, 0.0, 1.0]), SetOracle::poly_graph([0.0, 0.0, -1.0])],
        "example-2.3" => vec![
            SetOracle::union(vec![left(), SetOracle::poly_sublevel([0.0, 0.0, 1.0], Side::Above)]).unwrap(),
            SetOracle::union(vec![left(), SetOracle::poly_sublevel([0.0, 0.0, -1.0], Side::Below)]).unwrap(),
        ],
        "example-2.4" => vec![
            SetOracle::union(vec![
                left(),
                SetOracle::poly_sublevel([0.0, 0.0, 1.0], Side::Above),
                SetOracle::poly_sublevel([0.0, 0.0, -1.0], Side::Below),
            ])
            .unwrap(),
            SetOracle::whole_space(),
        ],
        _ => vec![up, SetOracle::halfspace(vec![1.0, 0.0], 0.0).unwrap()],
    };
    SetCollection::new(sets, vec![0.0, 0.0]).ok()
}
