use clap::{Args, Parser, Subcommand, ValueEnum};
use regmod::cli::{exit_code, run_estimate, run_reproduce, run_sweep, run_verify, Format, Report, RunConfig, Source, KINDS};
use regmod::moduli::RadiusSchedule;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "regmod", version, about = "Hoelder regularity constants of set collections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure a worked example's constants against their known values.
    Reproduce(Common),
    /// Estimate the requested constants.
    Estimate(Common),
    /// Verdicts over a q grid and the critical exponent.
    Sweep(Common),
    /// Cross-check estimators against each other.
    Verify(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Preset id: 2.1, 2.2, 2.3, 2.4 or orthogonal.
    #[arg(long, conflicts_with = "spec")]
    example: Option<String>,
    /// Set-spec JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    kinds: Option<Vec<String>>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    rho0: Option<f64>,
    #[arg(long)]
    shrink: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Fmt::Json)]
    format: Fmt,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock milliseconds per row.
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn config(&self, sweep: bool) -> Result<RunConfig, String> {
        let source = match (&self.example, &self.spec) {
            (Some(e), None) => Source::Preset(e.clone()),
            (None, Some(p)) => Source::Spec(p.clone()),
            _ => return Err("give exactly one of --example or --spec".into()),
        };
        let d = RadiusSchedule::default();
        let schedule = RadiusSchedule {
            rho0: self.rho0.unwrap_or(d.rho0),
            shrink: self.shrink.unwrap_or(d.shrink),
            steps: self.steps.unwrap_or(d.steps),
            samples_per_radius: self.samples.unwrap_or(d.samples_per_radius),
            seed: self.seed,
        };
        let mut cfg = RunConfig::preset("");
        cfg.source = source;
        cfg.schedule = schedule;
        cfg.timings = self.timings;
        cfg.format = match self.format {
            Fmt::Json => Format::Json,
            Fmt::Csv => Format::Csv,
        };
        if let Some(q) = &self.q {
            cfg.qs = q.clone();
        } else if sweep {
            cfg.qs = vec![0.5, 1.0, 1.5, 2.0, 2.5];
        }
        if let Some(k) = &self.kinds {
            for kind in k {
                if !KINDS.contains(&kind.as_str()) {
                    return Err(format!("unknown kind `{kind}` (expected one of {})", KINDS.join(", ")));
                }
            }
            cfg.kinds = k.clone();
        } else if sweep {
            cfg.kinds = vec!["semi".into()];
        }
        if cfg.qs.is_empty() || cfg.qs.iter().any(|q| !(*q > 0.0) || !q.is_finite()) {
            return Err("--q needs positive values".into());
        }
        Ok(cfg)
    }
}

fn threads() {
    if let Some(n) = std::env::var("REGMOD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    threads();
    let (common, sweep, run): (&Common, bool, fn(&RunConfig) -> regmod::Result<Report>) = match &cli.command {
        Command::Reproduce(c) => (c, false, run_reproduce),
        Command::Estimate(c) => (c, false, run_estimate),
        Command::Sweep(c) => (c, true, run_sweep),
        Command::Verify(c) => (c, false, run_verify),
    };
    let cfg = match common.config(sweep) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let text = report.render(cfg.format);
    match &common.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
