//! The three constants of a collection at two orders, with their traces.
//!
//! ```bash
//! cargo run --release --example regularity_constants -- 2.1
//! ```

use regmod::geometry::spec::preset;
use regmod::moduli::{modulus, ModulusKind, RadiusSchedule};

fn main() -> regmod::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "2.1".into());
    let coll = preset(&id).expect("unknown preset");
    let s = RadiusSchedule::default();
    for q in [0.5, 1.0] {
        for kind in [ModulusKind::Semi, ModulusKind::Sub, ModulusKind::Uniform] {
            let e = modulus(&coll, q, kind, &s)?;
            println!("q = {q:<4} {:<8} {:<10} {:.6} ± {:.1e}", kind.name(), e.verdict.name(), e.value, e.uncertainty);
            let trace: Vec<String> = e.trace.iter().map(|t| format!("{:.4}", t.quotient)).collect();
            println!("    trace {}", trace.join(" "));
        }
    }
    Ok(())
}
