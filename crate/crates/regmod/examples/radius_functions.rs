//! `θ_ρ` by both methods and `ζ_{ρ,δ}` for the lens `{0 ≤ y ≤ x²}`, next to
//! the closed form `√(1 + ρ²) − 1`.

use regmod::geometry::spec::preset;
use regmod::moduli::{theta_rho, zeta_rho_delta, RadiusSchedule, ThetaMethod};

fn main() -> regmod::Result<()> {
    let coll = preset("2.1").unwrap();
    let s = RadiusSchedule::default();
    for rho in [0.1, 0.2, 0.4, 0.6] {
        let a = theta_rho(&coll, rho, ThetaMethod::Definition, &s)?;
        let b = theta_rho(&coll, rho, ThetaMethod::UnionForm, &s)?;
        let exact = (1.0f64 + rho * rho).sqrt() - 1.0;
        println!("rho {rho:<4} theta {:.6} union {:.6} exact {exact:.6}", a.value, b.value);
    }
    let z = zeta_rho_delta(&coll, 0.1, 0.5, &s)?;
    println!("zeta(0.1, 0.5) = {:.6} ± {:.1e}", z.value, z.uncertainty);
    Ok(())
}
