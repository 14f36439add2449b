//! Testing a candidate constant directly: the error bound holds below the
//! estimate and breaks just above it.

use regmod::geometry::spec::preset;
use regmod::moduli::{check_metric_inequality, modulus, ModulusKind, RadiusSchedule};

fn main() -> regmod::Result<()> {
    let coll = preset("orthogonal").unwrap();
    let s = RadiusSchedule::default();
    let e = modulus(&coll, 1.0, ModulusKind::Sub, &s)?;
    println!("estimate {:.6}", e.value);
    for gamma in [0.5, 0.7, 0.71, 0.8] {
        let r = check_metric_inequality(&coll, 1.0, ModulusKind::Sub, gamma, 0.5, &s)?;
        println!("gamma {gamma:<4} pass {:<5} worst ratio {:.6} at {:?}", r.pass, r.worst_ratio, r.witness.first());
    }
    Ok(())
}
