//! Normal-cone criteria: the uniform infimum at `q = 1` for every preset and
//! the sub criterion trend at shrinking scales.

use regmod::dual::{dual_modulus, dual_trend, DualCfg, DualKind, DualRadii};
use regmod::geometry::spec::{preset, PRESETS};

fn main() -> regmod::Result<()> {
    let cfg = DualCfg::default();
    for id in PRESETS {
        let c = preset(id).unwrap();
        let r = dual_modulus(&c, DualKind::UniformQ1, 1.0, DualRadii::ball(0.2), &cfg)?;
        println!("{id:<22} uniform infimum {:.6} positive {}", r.infimum_estimate, r.positive());
    }

    let c = preset("2.2").unwrap();
    let scales: Vec<(f64, f64)> = [0.2, 0.05, 0.0125].iter().map(|&r| (r, r * 1e-3)).collect();
    for q in [0.5, 1.0] {
        let t = dual_trend(&c, q, &scales, &cfg)?;
        let v: Vec<String> = t.iter().map(|r| format!("{:.4}", r.infimum_estimate)).collect();
        println!("example-2.2 sub criterion q = {q}: {}", v.join(" → "));
    }
    Ok(())
}
