//! Metric-representation quotients and the estimators built on them.

use super::sampler::{minimize_shell, Blocks, Domain, Search, ShellBest};
use super::{CheckReport, ModulusEstimate, ModulusKind, RadiusSchedule, TracePoint};
use crate::error::{Error, Result};
use crate::geometry::{add, intersection_distance_shifted, norm, GeomCfg, SetCollection};

const EXCLUDE: f64 = 1e-12;

fn ratio(num: f64, d: f64) -> Option<f64> {
    if d <= EXCLUDE {
        None
    } else if d.is_infinite() {
        Some(0.0)
    } else {
        Some(num / d)
    }
}

/// `max‖x_i‖^q / d(x̄, ⋂(Ω_i − x_i))`; `None` when `x̄` stays in the translated intersection.
pub fn semi_quotient(coll: &SetCollection, xs: &[Vec<f64>], q: f64) -> Result<Option<f64>> {
    let d = intersection_distance_shifted(&coll.sets, xs, &coll.base_point, &GeomCfg::default())?.value;
    let num = xs.iter().map(|v| norm(v)).fold(0.0, f64::max).powf(q);
    Ok(ratio(num, d))
}

/// `max d^q(x, Ω_i) / d(x, ⋂Ω_i)`; `None` on the intersection.
pub fn sub_quotient(coll: &SetCollection, x: &[f64], q: f64) -> Result<Option<f64>> {
    let zero = vec![vec![0.0; coll.dim()]; coll.m()];
    uniform_quotient(coll, x, &zero, q)
}

/// `max d^q(x + x_i, Ω_i) / d(x, ⋂(Ω_i − x_i))`.
pub fn uniform_quotient(coll: &SetCollection, x: &[f64], xs: &[Vec<f64>], q: f64) -> Result<Option<f64>> {
    let d = intersection_distance_shifted(&coll.sets, xs, x, &GeomCfg::default())?.value;
    if d <= EXCLUDE {
        return Ok(None);
    }
    let mut num = 0.0f64;
    for (s, a) in coll.sets.iter().zip(xs) {
        num = num.max(s.distance(&add(x, a))?);
    }
    Ok(ratio(num.powf(q), d))
}

pub(crate) fn salt(kind: ModulusKind) -> u64 {
    match kind {
        ModulusKind::Semi => 1,
        ModulusKind::Sub => 2,
        ModulusKind::Uniform => 3,
        ModulusKind::Slope => 4,
        ModulusKind::MapSemi => 5,
        ModulusKind::MapSub => 6,
        ModulusKind::MapReg => 7,
    }
}

/// Blocks sampled for each kind, and the map from blocks to the quotient.
fn setup(coll: &SetCollection, kind: ModulusKind) -> Result<Domain> {
    let (n, m) = (coll.dim(), coll.m());
    Ok(match kind {
        ModulusKind::Semi => Domain::new(vec![n; m]),
        ModulusKind::Sub => Domain::new(vec![n]),
        ModulusKind::Uniform => Domain::new(vec![n; m + 1]),
        other => return Err(Error::Invalid(format!("`{}` is not a collection quotient kind", other.name()))),
    })
}

fn quotient_of(coll: &SetCollection, kind: ModulusKind, q: f64, b: &Blocks) -> Result<Option<f64>> {
    match kind {
        ModulusKind::Semi => semi_quotient(coll, b, q),
        ModulusKind::Sub => sub_quotient(coll, &add(&coll.base_point, &b[0]), q),
        _ => uniform_quotient(coll, &add(&coll.base_point, &b[0]), &b[1..], q),
    }
}

/// Witness blocks with the point block made absolute.
fn absolute(coll: &SetCollection, kind: ModulusKind, b: Blocks) -> Blocks {
    match kind {
        ModulusKind::Semi => b,
        _ => {
            let mut b = b;
            b[0] = add(&coll.base_point, &b[0]);
            b
        }
    }
}

pub(crate) fn scan<F>(
    domain: &Domain,
    tops: &[f64],
    shrink: f64,
    cfg: &RadiusSchedule,
    salt: u64,
    search: &Search,
    f: &F,
) -> Vec<ShellBest>
where
    F: Fn(&Blocks) -> Result<Option<f64>> + Sync,
{
    let pattern = domain.pattern(cfg.samples_per_radius, cfg.seed, salt);
    tops.iter().map(|&hi| minimize_shell(domain, &pattern, hi * shrink, hi, search, f)).collect()
}

pub(crate) fn shell_notes(shells: &[ShellBest]) -> Vec<String> {
    let errors: usize = shells.iter().map(|s| s.errors).sum();
    let mut notes = Vec::new();
    if errors > 0 {
        notes.push(format!("{errors} samples skipped: unresolved intersection distance"));
    }
    notes
}

/// Liminf of the metric-representation quotient of `kind` as the sampled
/// configuration shrinks to the base point.
pub fn modulus(coll: &SetCollection, q: f64, kind: ModulusKind, cfg: &RadiusSchedule) -> Result<ModulusEstimate> {
    cfg.validate()?;
    if !(q > 0.0) {
        return Err(Error::Invalid(format!("q must be positive, got {q}")));
    }
    if kind == ModulusKind::Slope {
        return super::slope_modulus(coll, q, cfg);
    }
    let domain = setup(coll, kind)?;
    let f = |b: &Blocks| quotient_of(coll, kind, q, b);
    let radii = cfg.radii();
    let shells = scan(&domain, &radii, cfg.shrink, cfg, salt(kind), &Search::default(), &f);
    let mut notes = shell_notes(&shells);
    if coll.base_point_interior(&GeomCfg::default()) {
        notes.push("interior point".into());
    }
    let trace = radii
        .iter()
        .zip(shells)
        .map(|(&rho, s)| TracePoint {
            rho,
            quotient: s.best,
            witness: s.witness.map(|b| absolute(coll, kind, b)).unwrap_or_default(),
        })
        .collect();
    Ok(ModulusEstimate::from_trace(kind, q, trace, notes))
}

/// Worst ratio of the metric inequality of `kind` over samples at scales
/// `δ·shrink^k` inside the `δ`-domain; passes when it stays above `γ`.
pub fn check_metric_inequality(
    coll: &SetCollection,
    q: f64,
    kind: ModulusKind,
    gamma: f64,
    delta: f64,
    cfg: &RadiusSchedule,
) -> Result<CheckReport> {
    cfg.validate()?;
    if !(gamma > 0.0 && delta > 0.0 && q > 0.0) {
        return Err(Error::Invalid("gamma, delta and q must be positive".into()));
    }
    let domain = setup(coll, kind)?;
    let f = |b: &Blocks| quotient_of(coll, kind, q, b);
    let tops: Vec<f64> = (0..=cfg.steps).map(|k| delta * cfg.shrink.powi(k as i32)).collect();
    let shells = scan(&domain, &tops, cfg.shrink, cfg, salt(kind), &Search::default(), &f);
    let mut worst = f64::INFINITY;
    let mut witness = Vec::new();
    let mut samples = 0;
    for s in shells {
        samples += s.valid;
        if s.best < worst {
            worst = s.best;
            witness = s.witness.map(|b| absolute(coll, kind, b)).unwrap_or_default();
        }
    }
    let pass = worst - gamma >= -1e-9 * gamma.max(1.0);
    Ok(CheckReport { kind, gamma, delta, q, worst_ratio: worst, witness, pass, samples })
}

/// Smallest sampled quotient of `kind` over configurations whose max block
/// norm lies in `[lo, hi]`; `lo = hi` gives a sphere.
pub fn quotient_infimum(coll: &SetCollection, q: f64, kind: ModulusKind, lo: f64, hi: f64, cfg: &RadiusSchedule) -> Result<TracePoint> {
    if !(lo > 0.0 && hi >= lo && q > 0.0) {
        return Err(Error::Invalid("need 0 < lo <= hi and q > 0".into()));
    }
    let domain = setup(coll, kind)?;
    let f = |b: &Blocks| quotient_of(coll, kind, q, b);
    let pattern = domain.pattern(cfg.samples_per_radius, cfg.seed, salt(kind));
    let s = minimize_shell(&domain, &pattern, lo, hi, &Search::default(), &f);
    Ok(TracePoint { rho: hi, quotient: s.best, witness: s.witness.map(|b| absolute(coll, kind, b)).unwrap_or_default() })
}
