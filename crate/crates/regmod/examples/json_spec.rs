//! Building a collection from a JSON set specification and estimating it.

use regmod::geometry::spec::parse_collection;
use regmod::moduli::{modulus, ModulusKind, RadiusSchedule};

const SPEC: &str = r#"{
  "space": {"dim": 2},
  "sets": [
    {"kind": "union", "sets": [
      {"kind": "halfspace", "normal": [-1, 0], "offset": 0},
      {"kind": "poly_sublevel", "coefficient": 1, "side": "above"}
    ]},
    {"kind": "translate", "base": {"kind": "halfspace", "normal": [1, 1], "offset": 0}, "shift": [0, 0]}
  ],
  "point": [0, 0]
}"#;

fn main() -> regmod::Result<()> {
    let coll = parse_collection(SPEC)?;
    println!("m = {}, dim = {}", coll.m(), coll.dim());
    for kind in [ModulusKind::Semi, ModulusKind::Sub] {
        let e = modulus(&coll, 1.0, kind, &RadiusSchedule::default())?;
        println!("{:<5} {} {:.6}", kind.name(), e.verdict.name(), e.value);
    }
    Ok(())
}
