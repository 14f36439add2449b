//! The slope constant against the sub constant on two collections.

use regmod::geometry::spec::preset;
use regmod::moduli::{modulus, slope_modulus, ModulusKind, RadiusSchedule};

fn main() -> regmod::Result<()> {
    let s = RadiusSchedule { samples_per_radius: 1000, ..RadiusSchedule::default() };
    for id in ["orthogonal", "2.1"] {
        let coll = preset(id).unwrap();
        let slope = slope_modulus(&coll, 1.0, &s)?;
        let sub = modulus(&coll, 1.0, ModulusKind::Sub, &s)?;
        println!("{id:<11} slope {:.6} ({})  sub {:.6} ({})", slope.value, slope.verdict.name(), sub.value, sub.verdict.name());
    }
    Ok(())
}
