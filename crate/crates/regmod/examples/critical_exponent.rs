//! Scanning the order `q` for the cusp pair: semiregularity holds up to
//! `q = 2` and fails beyond.

use regmod::geometry::spec::preset;
use regmod::moduli::{critical_exponent, ModulusKind, RadiusSchedule};

fn main() -> regmod::Result<()> {
    let coll = preset("2.4").unwrap();
    let grid = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
    let r = critical_exponent(&coll, ModulusKind::Semi, &grid, &RadiusSchedule::default())?;
    for row in &r.rows {
        println!("q {:<4} {:<10} {:.6}", row.q, row.verdict.name(), row.estimate.value);
    }
    println!("largest q with a positive constant: {:?}", r.q_star);
    Ok(())
}
