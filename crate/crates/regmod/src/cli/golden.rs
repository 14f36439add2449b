//! Worked-example constants and the tolerances they are reproduced to.

use super::{dual_uniform_row, load, stamp, timed, Report, Row, RunConfig, Source, Status};
use crate::error::{Error, Result};
use crate::geometry::spec::preset_name;
use crate::geometry::SetCollection;
use crate::moduli::{modulus, quotient_infimum, theta_rho, zeta_rho_delta, ModulusKind, RadiusSchedule, ThetaMethod, Verdict};

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Target {
    /// Within `rel` of the value.
    Near(f64, f64),
    Verdict(Verdict),
    AtLeast(f64),
    AtMost(f64),
}

impl Target {
    fn describe(self) -> String {
        match self {
            Target::Near(v, rel) => format!("{} ±{}%", super::fmt_num(v), (rel * 100.0).round()),
            Target::Verdict(Verdict::Divergent) => "inf".into(),
            Target::Verdict(v) => v.name().into(),
            Target::AtLeast(v) => format!(">= {}", super::fmt_num(v)),
            Target::AtMost(v) => format!("<= {}", super::fmt_num(v)),
        }
    }

    fn holds(self, value: f64, verdict: Option<Verdict>) -> bool {
        match self {
            Target::Near(v, rel) => value.is_finite() && (value - v).abs() <= rel * v.abs(),
            Target::Verdict(v) => verdict == Some(v),
            Target::AtLeast(v) => value >= v,
            Target::AtMost(v) => value <= v,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Quantity {
    Theta(f64),
    Zeta { rho: f64, delta: f64 },
    Modulus(ModulusKind, f64),
    /// Smallest sub quotient on the sphere of radius `ρ`, order `q`.
    Sphere(f64, f64),
    DualUniform,
}

struct Golden {
    quantity: Quantity,
    target: Target,
    /// Failure is reported but does not fail the run.
    advisory: bool,
}

fn g(quantity: Quantity, target: Target) -> Golden {
    Golden { quantity, target, advisory: false }
}

/// `θ_ρ = 2a³ + a` where `4a⁶ + a⁴ = ρ²`.
fn cusp_theta(rho: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64.max(rho));
    for _ in 0..200 {
        let a = 0.5 * (lo + hi);
        if 4.0 * a.powi(6) + a.powi(4) < rho * rho {
            lo = a;
        } else {
            hi = a;
        }
    }
    let a = 0.5 * (lo + hi);
    2.0 * a.powi(3) + a
}

fn goldens(name: &str) -> Vec<Golden> {
    use ModulusKind::*;
    use Quantity::*;
    use Target::*;
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    match name {
        "example-2.1" => {
            let mut v: Vec<Golden> = [0.2, 0.4, 0.6].iter().map(|&r: &f64| g(Theta(r), Near((1.0 + r * r).sqrt() - 1.0, 0.05))).collect();
            v.extend([
                g(Zeta { rho: 0.1, delta: 0.5 }, Near(0.1, 0.1)),
                g(Modulus(Semi, 0.5), Near(r2, 0.1)),
                g(Modulus(Semi, 1.0), Verdict(crate::moduli::Verdict::Zero)),
                g(Modulus(Sub, 1.0), Near(1.0, 0.1)),
                Golden { quantity: Modulus(Uniform, 0.5), target: Near(r2, 0.15), advisory: true },
            ]);
            v
        }
        "example-2.2" => vec![
            g(Theta(0.2), AtMost(crate::moduli::ZERO_FLOOR)),
            g(Modulus(Sub, 1.0), Verdict(crate::moduli::Verdict::Zero)),
            g(Modulus(Sub, 0.5), Near(1.0, 0.1)),
            g(Sphere(0.102, 1.0), Near((4e-6f64 + 1e-4).sqrt() / 0.102, 0.1)),
            g(Modulus(Semi, 0.5), Verdict(crate::moduli::Verdict::Zero)),
            g(Modulus(Semi, 1.0), Verdict(crate::moduli::Verdict::Zero)),
        ],
        "example-2.3" => vec![g(Modulus(Semi, 1.0), AtLeast(0.9)), g(Modulus(Sub, 1.0), Verdict(crate::moduli::Verdict::Zero))],
        "example-2.4" => {
            let mut v: Vec<Golden> = [0.2, 0.4, 0.6].iter().map(|&r| g(Theta(r), Near(cusp_theta(r), 0.05))).collect();
            v.extend([
                g(Modulus(Semi, 0.5), Verdict(crate::moduli::Verdict::Divergent)),
                g(Modulus(Semi, 1.0), Verdict(crate::moduli::Verdict::Divergent)),
                g(Modulus(Semi, 2.0), Near(1.0, 0.25)),
                g(Modulus(Semi, 2.5), Verdict(crate::moduli::Verdict::Zero)),
            ]);
            v
        }
        _ => vec![
            g(Theta(0.5), Near(0.5 * r2, 0.05)),
            g(Zeta { rho: 0.1, delta: 0.5 }, Near(0.1 * r2, 0.1)),
            g(Modulus(Semi, 1.0), Near(r2, 0.1)),
            g(Modulus(Sub, 1.0), Near(r2, 0.1)),
            g(Modulus(Uniform, 1.0), Near(r2, 0.1)),
            g(DualUniform, Near(r2, 0.1)),
        ],
    }
}

fn measure(name: &str, coll: &SetCollection, q: Quantity, s: &RadiusSchedule) -> Result<(Row, Option<Verdict>)> {
    Ok(match q {
        Quantity::Theta(rho) => {
            let e = theta_rho(coll, rho, ThetaMethod::Definition, s)?;
            (Row::new(name, 1.0, "theta_rho", &format!("definition rho={rho}"), e.value, "measured", e.uncertainty), None)
        }
        Quantity::Zeta { rho, delta } => {
            let e = zeta_rho_delta(coll, rho, delta, s)?;
            (Row::new(name, 1.0, "zeta_rho_delta", &format!("bisection rho={rho} delta={delta}"), e.value, "measured", e.uncertainty), None)
        }
        Quantity::Modulus(k, q) => {
            let e = modulus(coll, q, k, s)?;
            (Row::from_estimate(name, &e, "sampled_quotient"), Some(e.verdict))
        }
        Quantity::Sphere(rho, q) => {
            let t = quotient_infimum(coll, q, ModulusKind::Sub, rho, rho, s)?;
            (Row::new(name, q, "sub", &format!("sphere_quotient rho={rho}"), t.quotient, "measured", 0.0), None)
        }
        Quantity::DualUniform => (dual_uniform_row(name, coll, s)?, None),
    })
}

/// Every worked-example constant of the preset, measured against its target.
pub fn run_reproduce(cfg: &RunConfig) -> Result<Report> {
    let Source::Preset(id) = &cfg.source else {
        return Err(Error::Invalid("reproduce needs --example".into()));
    };
    if preset_name(id).is_none() {
        return Err(Error::Invalid(format!("unknown example `{id}`")));
    }
    let (name, coll) = load(&cfg.source)?;
    let mut rows = Vec::new();
    for gd in goldens(&name) {
        let (res, ms) = timed(cfg.timings, || measure(&name, &coll, gd.quantity, &cfg.schedule));
        let (row, verdict) = res?;
        let ok = gd.target.holds(row.value, verdict);
        let status = match (ok, gd.advisory) {
            (true, _) => Status::Pass,
            (false, true) => Status::Advisory,
            (false, false) => Status::Fail,
        };
        rows.extend(stamp(vec![row.check(gd.target.describe(), status)], ms, cfg.schedule.seed));
    }
    Ok(Report::new("reproduce", cfg, rows))
}
