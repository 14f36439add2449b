//! Fréchet and proximal normals, and the duality mapping of a max-norm
//! product.

use regmod::dual::{duality_map_check, duality_map_sample, frechet_normal_cone, proximal_normals, ProximalCfg};
use regmod::geometry::spec::preset;
use regmod::geometry::SetOracle;

fn main() -> regmod::Result<()> {
    let o = [0.0, 0.0];
    let sets = [
        ("halfspace y >= 0", SetOracle::halfspace(vec![0.0, 1.0], 0.0)?),
        ("graph y = x²", SetOracle::poly_graph([0.0, 0.0, 1.0])),
        ("cusp complement", preset("2.4").unwrap().sets[0].clone()),
    ];
    for (name, s) in &sets {
        let cone = frechet_normal_cone(s, &o)?;
        let prox = proximal_normals(s, &o, &ProximalCfg::default())?;
        let gens: Vec<_> = cone.generators.iter().map(|g| g.direction.clone()).collect();
        println!("{name:<18} {:?} {:?}  proximal directions: {}", cone.tag, gens, prox.len());
    }

    let xs = vec![vec![1.0, 0.0], vec![0.0, -1.0], vec![0.3, 0.3]];
    for j in duality_map_sample(&xs)? {
        println!("J element {j:?} valid {}", duality_map_check(&xs, &j));
    }
    Ok(())
}
