//! `neumann-bessel`: evaluate, certify and export Neumann–Bessel identities
//! and polygon eigenfunction fields.
//!
//! Exit status: 0 when everything passes, 1 when a verification fails, 2 on
//! usage, configuration or evaluation errors.

mod config;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use neumann_bessel_core::identities::{eval_sides, list_identities, registry, registry_json};
use neumann_bessel_core::polygon::{critical_points_json, separatrix_value_within, DEFAULT_SEARCH_RADIUS};
use neumann_bessel_core::verify::DEFAULT_THRESHOLD_FACTOR;
use neumann_bessel_core::{
    bessel_j, fmt17, sample_grid, sweep, verify_all, EvalBudget, FieldSpec, GridSpec, IdSelection, Mode, ParamPoint,
    Status, SweepConfig,
};

const THREADS_ENV: &str = "NEUMANN_BESSEL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "neumann-bessel", version)]
#[command(about = "Certified Neumann series of Bessel functions and polygon eigenfunctions")]
struct Cli {
    /// Flat `key = value` file supplying defaults for any flag of the subcommand.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List identity ids with their titles and formulas.
    List,
    /// Evaluate both sides of one identity at a point.
    Eval(EvalArgs),
    /// Certify identities and polygon invariants; writes a JSON report.
    Verify(VerifyArgs),
    /// Evaluate identities over parameter grids; writes a JSON report.
    Sweep(SweepArgs),
    /// Sample an eigenfunction on a rectangle; writes CSV `x,y,value`.
    Contour(ContourArgs),
    /// Separatrix value of f_n and the saddles on its innermost ring.
    Separatrix(SeparatrixArgs),
    /// Single Bessel value J_m(z).
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<f64>,
    },
    /// Dump the identity registry as JSON.
    Registry {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Tolerance {
    /// Truncation tolerance for every series.
    #[arg(long)]
    eps: Option<f64>,
    /// Residual cutoff for a pass (default 100 × eps).
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<f64>,
}

impl Tolerance {
    fn resolve(&self) -> Result<(EvalBudget, f64)> {
        let budget = EvalBudget::with_eps(self.eps.unwrap_or(EvalBudget::DEFAULT_EPS))?;
        let threshold = self.threshold.unwrap_or(DEFAULT_THRESHOLD_FACTOR * budget.eps);
        if !(threshold >= 0.0 && threshold.is_finite()) {
            bail!("threshold must be finite and non-negative, got {threshold}");
        }
        Ok((budget, threshold))
    }
}

/// Named identity parameters; only the ones the chosen identity declares
/// may be given.
#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    n: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    zp: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
}

impl PointArgs {
    fn to_point(&self) -> ParamPoint {
        let named = [
            ("n", self.n),
            ("p", self.p),
            ("q", self.q),
            ("z", self.z),
            ("zp", self.zp),
            ("y", self.y),
            ("t", self.t),
            ("alpha", self.alpha),
            ("r", self.r),
            ("theta", self.theta),
            ("x", self.x),
            ("a", self.a),
        ];
        let mut pt = ParamPoint::new();
        for (name, value) in named {
            if let Some(v) = value {
                pt.set(name, v);
            }
        }
        pt
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    id: Option<String>,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Full certification: every identity plus the polygon checks.
    #[arg(long, conflicts_with = "id")]
    all: bool,
    /// Comma-separated identity ids (default grids only).
    #[arg(long, value_delimiter = ',')]
    id: Vec<String>,
    #[command(flatten)]
    tol: Tolerance,
    /// JSON report path (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the per-point residuals as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated identity ids, or `all`.
    #[arg(long, value_delimiter = ',')]
    id: Vec<String>,
    /// Grid override `name=v1,v2,...` or `name=min:max:count`; repeatable.
    #[arg(long = "grid", value_name = "SPEC", allow_hyphen_values = true)]
    grids: Vec<String>,
    #[command(flatten)]
    tol: Tolerance,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ContourArgs {
    /// `fn`, `hexagon-triangle` or `decagon`.
    #[arg(long, default_value = "fn")]
    mode: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    xmax: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    ymin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    ymax: Option<f64>,
    #[arg(long, default_value_t = 201)]
    nx: usize,
    #[arg(long, default_value_t = 201)]
    ny: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SeparatrixArgs {
    #[arg(long)]
    n: Option<u32>,
    /// Saddle search radius around the origin.
    #[arg(long, default_value_t = DEFAULT_SEARCH_RADIUS)]
    radius: f64,
    /// Write the saddles as JSON here instead of after the value.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let args: Vec<OsString> = std::env::args_os().collect();
    let cli = match parse(&args) {
        Ok(cli) => cli,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Parses the command line, then again with config entries appended.
/// Clap usage errors exit directly with status 2.
fn parse(args: &[OsString]) -> Result<Cli> {
    let cli = Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    let Some(path) = &cli.config else {
        return Ok(cli);
    };
    let merged = config::merge(args, &config::load(path)?);
    Ok(Cli::try_parse_from(merged).unwrap_or_else(|e| e.exit()))
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_ENV} must be a non-negative integer, got `{raw}`"))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::List => {
            let mut out = io::stdout().lock();
            for (id, title, formula) in list_identities() {
                writeln!(out, "{id}\t{title}\t{formula}")?;
            }
            Ok(Outcome::Pass)
        }
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Contour(a) => contour(a),
        Command::Separatrix(a) => separatrix(a),
        Command::Bessel { m, z } => {
            let m = m.ok_or_else(|| anyhow!("bessel needs --m"))?;
            let z = z.ok_or_else(|| anyhow!("bessel needs --z"))?;
            println!("{}", fmt17(bessel_j(m, z)?));
            Ok(Outcome::Pass)
        }
        Command::Registry { out } => {
            emit(out.as_deref(), &(registry_json() + "\n"))?;
            Ok(Outcome::Pass)
        }
    }
}

fn eval(a: EvalArgs) -> Result<Outcome> {
    let id = a.id.ok_or_else(|| anyhow!("eval needs --id"))?;
    let (budget, threshold) = a.tol.resolve()?;
    let sides = eval_sides(&id, &a.point.to_point(), &budget)?;
    let residual = sides.residual();
    println!(
        "{id} {} {} {} {} {}",
        fmt17(sides.lhs.value.re),
        fmt17(sides.lhs.value.im),
        fmt17(sides.rhs.value.re),
        fmt17(sides.rhs.value.im),
        fmt17(residual)
    );
    Ok(if residual <= threshold {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let (budget, threshold) = a.tol.resolve()?;
    if a.all {
        let report = verify_all(budget, threshold)?;
        emit(a.out.as_deref(), &(report.to_json() + "\n"))?;
        if let Some(path) = &a.csv {
            write_file(path, &report.identities.to_csv())?;
        }
        let failed_checks = report.checks.iter().filter(|c| !c.pass).count();
        let s = &report.identities.summary;
        eprintln!(
            "{} points, {} failures, max residual {}; {} of {} checks failed",
            s.count,
            s.failures,
            fmt17(s.max_residual),
            failed_checks,
            report.checks.len()
        );
        return Ok(match report.status {
            Status::Pass => Outcome::Pass,
            Status::Fail => Outcome::Fail,
        });
    }
    if a.id.is_empty() {
        bail!("verify needs --all or --id");
    }
    let mut cfg = SweepConfig::new(IdSelection::List(a.id), budget);
    cfg.threshold = threshold;
    finish_sweep(&cfg, a.out.as_deref(), a.csv.as_deref())
}

fn sweep_cmd(a: SweepArgs) -> Result<Outcome> {
    let (budget, threshold) = a.tol.resolve()?;
    let ids = if a.id.is_empty() || a.id.iter().any(|i| i == "all") {
        IdSelection::All
    } else {
        IdSelection::List(a.id)
    };
    let mut cfg = SweepConfig::new(ids, budget);
    cfg.threshold = threshold;
    cfg.grids = parse_grids(&a.grids)?;
    finish_sweep(&cfg, a.out.as_deref(), a.csv.as_deref())
}

fn finish_sweep(cfg: &SweepConfig, out: Option<&Path>, csv: Option<&Path>) -> Result<Outcome> {
    let report = sweep(cfg)?;
    emit(out, &(report.to_json() + "\n"))?;
    if let Some(path) = csv {
        write_file(path, &report.to_csv())?;
    }
    eprintln!(
        "{} points, {} failures, max residual {}",
        report.summary.count,
        report.summary.failures,
        fmt17(report.summary.max_residual)
    );
    Ok(if report.summary.failures == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

/// `name=v1,v2,...` (explicit values) or `name=min:max:count` (linear range).
fn parse_grid(spec: &str) -> Result<(String, GridSpec)> {
    let (name, body) = spec
        .split_once('=')
        .ok_or_else(|| anyhow!("grid `{spec}` should look like name=v1,v2 or name=min:max:count"))?;
    let name = name.trim();
    if !registry()
        .records()
        .iter()
        .any(|r| r.params.iter().any(|p| p.name == name))
    {
        bail!("grid names unknown parameter `{name}`");
    }
    let number = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .with_context(|| format!("bad number `{s}` in grid `{spec}`"))
    };
    let grid = match body.split(':').collect::<Vec<_>>().as_slice() {
        [min, max, count] => GridSpec::Linear {
            min: number(min)?,
            max: number(max)?,
            count: count
                .trim()
                .parse()
                .with_context(|| format!("bad count in grid `{spec}`"))?,
        },
        [list] if !list.trim().is_empty() => GridSpec::List(list.split(',').map(number).collect::<Result<_>>()?),
        _ => bail!("grid `{spec}` should look like name=v1,v2 or name=min:max:count"),
    };
    Ok((name.to_string(), grid))
}

fn parse_grids(specs: &[String]) -> Result<BTreeMap<String, GridSpec>> {
    specs.iter().map(|s| parse_grid(s)).collect()
}

fn contour(a: ContourArgs) -> Result<Outcome> {
    let mode = Mode::from_name(&a.mode, a.n)?;
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| anyhow!("contour needs --{flag}"));
    let spec = FieldSpec {
        x_min: need(a.xmin, "xmin")?,
        x_max: need(a.xmax, "xmax")?,
        y_min: need(a.ymin, "ymin")?,
        y_max: need(a.ymax, "ymax")?,
        nx: a.nx,
        ny: a.ny,
    };
    let field = sample_grid(mode, &spec)?;
    let mut buf = Vec::new();
    field.write_csv(&mut buf)?;
    emit(a.out.as_deref(), std::str::from_utf8(&buf)?)?;
    Ok(Outcome::Pass)
}

fn separatrix(a: SeparatrixArgs) -> Result<Outcome> {
    let n = a.n.ok_or_else(|| anyhow!("separatrix needs --n"))?;
    if !(a.radius > 0.0 && a.radius.is_finite()) {
        bail!("--radius must be positive, got {}", a.radius);
    }
    let s = separatrix_value_within(n, a.radius)?;
    let json = critical_points_json(&s.saddles) + "\n";
    println!("{}", fmt17(s.value));
    match &a.out {
        Some(path) => write_file(path, &json)?,
        None => print!("{json}"),
    }
    eprintln!(
        "n = {n}: {} saddles at r = {}, accuracy {}",
        s.saddles.len(),
        fmt17(s.ring_radius),
        fmt17(s.accuracy)
    );
    Ok(Outcome::Pass)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
