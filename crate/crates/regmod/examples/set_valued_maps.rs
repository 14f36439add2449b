//! Maps and collections: constants of `x ↦ x²`, of the product map of a
//! collection, and the sandwich bounds between a map and its graph pair.

use regmod::geometry::spec::preset;
use regmod::mappings::{bridge_check, collection_to_map, map_modulus, SetValuedMap};
use regmod::moduli::{modulus, ModulusKind, RadiusSchedule};

fn main() -> regmod::Result<()> {
    let s = RadiusSchedule::default();
    let square = SetValuedMap::poly(vec![0.0, 0.0, 1.0], 0.0)?;
    println!("d(F⁻¹(0.25), 0.1) = {}", square.inverse_distance(&[0.1], &[0.25])?);
    for q in [0.5, 1.0] {
        let e = map_modulus(&square, q, ModulusKind::MapSub, &s)?;
        println!("x²  map_sub q = {q}: {} {:.6}", e.verdict.name(), e.value);
    }

    let coll = preset("2.1").unwrap();
    let f = collection_to_map(&coll);
    let a = modulus(&coll, 1.0, ModulusKind::Sub, &s)?;
    let b = map_modulus(&f, 1.0, ModulusKind::MapSub, &s)?;
    println!("example-2.1 sub {:.6} vs product map {:.6}", a.value, b.value);

    for row in bridge_check(&square, 0.5, &s)?.rows {
        println!(
            "{:<8} map {:.4}  collection {:.4} in [{:.4}, {:.4}] {}",
            row.collection.kind.name(),
            row.map.value,
            row.collection.value,
            row.lower,
            row.upper,
            if row.pass { "ok" } else { "outside" }
        );
    }
    Ok(())
}
