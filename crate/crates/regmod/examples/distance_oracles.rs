//! Distances, projections and intersection distances for the built-in
//! collections.

use regmod::geometry::spec::{preset, PRESETS};
use regmod::geometry::{intersection_distance, SetOracle, Side};

fn main() -> regmod::Result<()> {
    let x = [0.4, -0.3];
    let parabola = SetOracle::poly_graph([0.0, 0.0, 1.0]);
    let p = parabola.project(&x)?;
    println!("d(x, y = x²) = {:.6} at {:?}", parabola.distance(&x)?, p[0]);

    let cusp = SetOracle::union(vec![
        SetOracle::halfspace(vec![-1.0, 0.0], 0.0)?,
        SetOracle::poly_sublevel([0.0, 0.0, 1.0], Side::Above),
        SetOracle::poly_sublevel([0.0, 0.0, -1.0], Side::Below),
    ])?;
    println!("d(x, cusp complement) = {:.6}", cusp.distance(&x)?);

    // Translates: d(Ω − a, x) = d(Ω, x + a).
    let shifted = parabola.translate(&[0.0, 0.5]);
    println!("d(x, (y = x²) − (0, 0.5)) = {:.6}", shifted.distance(&x)?);

    for id in PRESETS {
        let c = preset(id).unwrap();
        let d = intersection_distance(&c, &x)?;
        println!("{id:<22} max_i d = {:.6}  d(x, ∩) = {:.6}  exact = {}", c.max_distance(&x)?, d.value, d.exact);
    }
    Ok(())
}
