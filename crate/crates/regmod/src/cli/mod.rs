//! Front end shared by the `regmod` binary: run configuration, the four
//! commands, and JSON/CSV reports.

mod golden;
mod verify;

pub use golden::run_reproduce;
pub use verify::run_verify;

use crate::dual::{dual_modulus, dual_trend, DualCfg, DualKind, DualRadii};
use crate::error::{Error, Result};
use crate::geometry::spec::{parse_collection, preset, preset_name};
use crate::geometry::SetCollection;
use crate::mappings::{collection_to_map, map_modulus};
use crate::moduli::{critical_exponent, modulus, ModulusEstimate, ModulusKind, RadiusSchedule, ZERO_FLOOR};
use serde::{Serialize, Serializer};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Preset(String),
    Spec(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub source: Source,
    pub qs: Vec<f64>,
    pub kinds: Vec<String>,
    pub schedule: RadiusSchedule,
    pub format: Format,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}

impl RunConfig {
    pub fn preset(id: &str) -> Self {
        Self {
            source: Source::Preset(id.to_string()),
            qs: vec![0.5, 1.0],
            kinds: vec!["semi".into(), "sub".into(), "uniform".into()],
            schedule: RadiusSchedule::default(),
            format: Format::Json,
            timings: false,
        }
    }

    fn echo(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap_or(serde_json::Value::Null)
    }
}

/// Kinds accepted by `estimate`.
pub const KINDS: [&str; 9] = ["semi", "sub", "uniform", "slope", "map_semi", "map_sub", "map_reg", "dual_uniform", "dual_subreg"];

/// Loads the collection named by `source` and a label for it.
pub fn load(source: &Source) -> Result<(String, SetCollection)> {
    match source {
        Source::Preset(id) => {
            let name = preset_name(id).ok_or_else(|| Error::Invalid(format!("unknown example `{id}`")))?;
            Ok((name.to_string(), preset(name).unwrap()))
        }
        Source::Spec(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            let coll = parse_collection(&text)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "spec".into());
            Ok((name, coll))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed, but the claim it checks is not a hard requirement.
    Advisory,
    Skip,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Advisory => "advisory",
            Status::Skip => "skip",
        }
    }
}

/// Six significant digits.
pub fn round6(x: f64) -> f64 {
    if x.is_finite() && x != 0.0 {
        format!("{x:.5e}").parse().unwrap()
    } else {
        x
    }
}

pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        let r = round6(x);
        if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e6) {
            format!("{r:e}")
        } else {
            r.to_string()
        }
    }
}

fn ser_num<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round6(*x))
    } else {
        s.serialize_str(&fmt_num(*x))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub collection: String,
    #[serde(serialize_with = "ser_num")]
    pub q: f64,
    pub kind: String,
    pub method: String,
    #[serde(serialize_with = "ser_num")]
    pub value: f64,
    pub verdict: String,
    #[serde(serialize_with = "ser_num")]
    pub uncertainty: f64,
    pub wallclock_ms: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
}

impl Row {
    pub fn new(collection: &str, q: f64, kind: &str, method: &str, value: f64, verdict: &str, uncertainty: f64) -> Self {
        Self {
            collection: collection.into(),
            q,
            kind: kind.into(),
            method: method.into(),
            value,
            verdict: verdict.into(),
            uncertainty,
            wallclock_ms: 0,
            seed: 0,
            target: None,
            status: None,
        }
    }

    pub fn from_estimate(collection: &str, e: &ModulusEstimate, method: &str) -> Self {
        Self::new(collection, e.q, e.kind.name(), method, e.value, e.verdict.name(), e.uncertainty)
    }

    pub fn check(mut self, target: impl Into<String>, status: Status) -> Self {
        self.target = Some(target.into());
        self.status = Some(status);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub rows: Vec<Row>,
}

impl Report {
    fn new(command: &str, cfg: &RunConfig, rows: Vec<Row>) -> Self {
        Self { tool: "regmod".into(), version: env!("CARGO_PKG_VERSION").into(), command: command.into(), config: cfg.echo(), rows }
    }

    /// No row has status `fail`.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Some(Status::Fail))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).unwrap() + "\n",
            Format::Csv => self.csv(),
        }
    }

    fn csv(&self) -> String {
        let checked = self.rows.iter().any(|r| r.status.is_some());
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["collection", "q", "kind", "method", "value", "verdict", "uncertainty", "wallclock_ms", "seed"];
        if checked {
            header.extend(["target", "status"]);
        }
        w.write_record(&header).unwrap();
        for r in &self.rows {
            let mut rec = vec![
                r.collection.clone(),
                fmt_num(r.q),
                r.kind.clone(),
                r.method.clone(),
                fmt_num(r.value),
                r.verdict.clone(),
                fmt_num(r.uncertainty),
                r.wallclock_ms.to_string(),
                r.seed.to_string(),
            ];
            if checked {
                rec.push(r.target.clone().unwrap_or_default());
                rec.push(r.status.map(|s| s.name()).unwrap_or("").into());
            }
            w.write_record(&rec).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Runs `f`, returning its output and the elapsed milliseconds when `on`.
pub(crate) fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, u64) {
    let t = Instant::now();
    let out = f();
    (out, if on { t.elapsed().as_millis() as u64 } else { 0 })
}

pub(crate) fn stamp(mut rows: Vec<Row>, ms: u64, seed: u64) -> Vec<Row> {
    for r in rows.iter_mut() {
        r.wallclock_ms = ms;
        r.seed = seed;
    }
    rows
}

/// `(ρ, ε)` scales for the sampled subregularity criterion.
pub(crate) fn dual_scales(s: &RadiusSchedule) -> Vec<(f64, f64)> {
    [1, 3, 5].iter().map(|&k| s.rho0 * s.shrink.powi(k)).map(|r| (r, r * 1e-3)).collect()
}

/// Row for the sampled uniform criterion at `δ = 0.4·rho0`.
pub(crate) fn dual_uniform_row(name: &str, coll: &SetCollection, s: &RadiusSchedule) -> Result<Row> {
    let cfg = DualCfg::from_schedule(s);
    let r = dual_modulus(coll, DualKind::UniformQ1, 1.0, DualRadii::ball(0.4 * s.rho0), &cfg)?;
    let verdict = if r.positive() { "positive" } else { "zero" };
    Ok(Row::new(name, 1.0, "dual_uniform", "normal_cone_grid", r.infimum_estimate, verdict, 1.0 / cfg.weight_steps as f64))
}

/// Row for the sampled subregularity criterion: positive when the two
/// smallest scales both clear the zero floor.
pub(crate) fn dual_subreg_row(name: &str, coll: &SetCollection, q: f64, s: &RadiusSchedule) -> Result<Row> {
    let trend = dual_trend(coll, q, &dual_scales(s), &DualCfg::from_schedule(s))?;
    let n = trend.len();
    let last = trend[n - 1].infimum_estimate;
    let prev = trend[n - 2].infimum_estimate;
    let verdict = if last > ZERO_FLOOR && prev > ZERO_FLOOR { "positive" } else { "zero" };
    let unc = if last.is_finite() && prev.is_finite() { (last - prev).abs() } else { 0.0 };
    Ok(Row::new(name, q, "dual_subreg", "normal_cone_trend", last, verdict, unc))
}

fn estimate_rows(name: &str, coll: &SetCollection, kind: &str, q: f64, s: &RadiusSchedule) -> Result<Vec<Row>> {
    Ok(match kind {
        "dual_uniform" => vec![dual_uniform_row(name, coll, s)?],
        "dual_subreg" => vec![dual_subreg_row(name, coll, q, s)?],
        _ => {
            let k = ModulusKind::parse(kind).ok_or_else(|| Error::Invalid(format!("unknown kind `{kind}`")))?;
            let (e, method) = match k {
                ModulusKind::MapSemi | ModulusKind::MapSub | ModulusKind::MapReg => (map_modulus(&collection_to_map(coll), q, k, s)?, "map_quotient"),
                ModulusKind::Slope => (modulus(coll, q, k, s)?, "local_slope"),
                _ => (modulus(coll, q, k, s)?, "sampled_quotient"),
            };
            vec![Row::from_estimate(name, &e, method)]
        }
    })
}

/// Each requested kind at each `q`.
pub fn run_estimate(cfg: &RunConfig) -> Result<Report> {
    let (name, coll) = load(&cfg.source)?;
    let mut rows = Vec::new();
    for kind in &cfg.kinds {
        for &q in &cfg.qs {
            let (r, ms) = timed(cfg.timings, || estimate_rows(&name, &coll, kind, q, &cfg.schedule));
            rows.extend(stamp(r?, ms, cfg.schedule.seed));
            if kind == "dual_uniform" {
                break;
            }
        }
    }
    Ok(Report::new("estimate", cfg, rows))
}

/// Verdict table over the ascending `q` grid per kind, then one row with
/// the critical exponent `q*` (`nan` when no grid `q` is positive).
pub fn run_sweep(cfg: &RunConfig) -> Result<Report> {
    let (name, coll) = load(&cfg.source)?;
    let mut grid = cfg.qs.clone();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let mut rows = Vec::new();
    for kind in &cfg.kinds {
        let k = ModulusKind::parse(kind).ok_or_else(|| Error::Invalid(format!("unknown kind `{kind}`")))?;
        let (res, ms) = timed(cfg.timings, || critical_exponent(&coll, k, &grid, &cfg.schedule));
        let res = res?;
        let mut out = Vec::new();
        for r in &res.rows {
            let mut row = Row::from_estimate(&name, &r.estimate, "sampled_quotient");
            row.verdict = r.verdict.name().into();
            out.push(row);
        }
        let q_star = res.q_star.unwrap_or(f64::NAN);
        let flagged = res.rows.iter().any(|r| r.flagged);
        out.push(Row::new(&name, q_star, k.name(), "critical_exponent", q_star, if flagged { "inconclusive" } else { "monotone" }, 0.0));
        rows.extend(stamp(out, ms, cfg.schedule.seed));
    }
    Ok(Report::new("sweep", cfg, rows))
}

/// Process exit code for an error: 3 for a base point outside a set,
/// 2 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BasePoint { .. } => 3,
        _ => 2,
    }
}
