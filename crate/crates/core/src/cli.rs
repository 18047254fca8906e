//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on numerical failure, 2 on usage errors.
//! Settings resolve as flag, then the TOML file named by `JBV_CONFIG`, then
//! the built-in default. Floats are written in shortest round-trip form.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::approximant::{ac_density_grid, weyl_solution, wronskian_defect, ApproximantSpec};
use crate::coefficients::{CoefficientSpec, JacobiCoefficients, PeriodicJacobi};
use crate::constructions::{build_schedule, theorem15_sequence, theorem16_sequence, ScheduleMode};
use crate::diagnostics::{growth_statistic, verify_prop62, Prop62Report};
use crate::error::Error;
use crate::periodic::{band_structure, intersection_over_family, FamilyMode, FamilySampling};
use crate::transfer::{eigen_branch, pick_sign, q_step_block, transfer_product};

pub const CONFIG_ENV: &str = "JBV_CONFIG";

#[derive(Debug, Parser)]
#[command(name = "jbv", version, about = "Spectral diagnostics for periodic and bounded-variation Jacobi matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Band structure of a periodic Jacobi matrix.
    Bands(BandsArgs),
    /// Write a constructed coefficient sequence.
    #[command(subcommand)]
    Construct(Construct),
    /// A.c. density of an eventually periodic approximant on a grid.
    Density(DensityArgs),
    /// Transfer-matrix growth statistics.
    Diagnose(DiagnoseArgs),
    /// Invariant checks as a pass/fail table.
    Verify(VerifyArgs),
    /// Intersection of spectra or q-interiors over a family.
    Intersect(IntersectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Analytic,
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum SetArg {
    Spectrum,
    QInterior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SamplingArg {
    Path,
    Discrete,
}

#[derive(Debug, Args)]
struct PeriodicArgs {
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Option<Vec<f64>>,
    /// JSON file holding a `Periodic` or `Constant` spec, or `{"a": [...], "b": [...]}`.
    #[arg(long)]
    periodic: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BandsArgs {
    #[command(flatten)]
    periodic: PeriodicArgs,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// Staircase plus comb sequence built level by level.
    Thm15(Thm15Args),
    /// `b_n = λ cos(n^γ)`.
    Thm16(Thm16Args),
}

#[derive(Debug, Args)]
struct Thm15Args {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    margin: Option<f64>,
    /// Spec file; without it the spec and metadata go to stdout as one document.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the schedule; defaults to `<out>.schedule.json` when `--out` is given.
    #[arg(long)]
    schedule_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Thm16Args {
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    q: usize,
    /// Block index after which the approximant repeats.
    #[arg(long = "N", alias = "blocks")]
    blocks: usize,
    /// `lo:hi:points`, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, required = true, allow_hyphen_values = true)]
    x: Vec<f64>,
    #[arg(long = "N", alias = "n")]
    n: Option<usize>,
    #[command(flatten)]
    gap: GapArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GapArgs {
    /// `m:k:E:delta` window for the gap growth bound.
    #[arg(long, allow_hyphen_values = true)]
    verify_gap: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    compare_a: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    compare_b: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    q: usize,
    #[arg(long = "N", alias = "blocks")]
    blocks: usize,
    #[arg(long, required = true, allow_hyphen_values = true)]
    x: Vec<f64>,
    #[command(flatten)]
    gap: GapArgs,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IntersectArgs {
    /// Period of the constant family `J(1, β)`, `β ∈ [−λ, λ]`.
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Number of β samples.
    #[arg(long)]
    points: Option<usize>,
    /// JSON list of periodic matrices instead of the constant family.
    #[arg(long)]
    family: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<SetArg>,
    #[arg(long, value_enum)]
    sampling: Option<SamplingArg>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Settings read from the `JBV_CONFIG` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    tol: Option<f64>,
    cap: Option<usize>,
    levels: Option<usize>,
    mode: Option<ModeArg>,
    margin: Option<f64>,
    n: Option<usize>,
    points: Option<usize>,
    set: Option<SetArg>,
    sampling: Option<SamplingArg>,
    format: Option<Format>,
}

mod defaults {
    pub const TOL: f64 = 1e-10;
    pub const CAP: usize = 1_000_000;
    pub const LEVELS: usize = 2;
    pub const MARGIN: f64 = 1.0;
    pub const N: usize = 10_000;
    pub const POINTS: usize = 101;
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Spec(_) | Error::Precondition(_) | Error::Io(_) | Error::Json(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn load_config() -> CliResult<Config> {
    match std::env::var_os(CONFIG_ENV) {
        None => Ok(Config::default()),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("cannot read {}: {e}", Path::new(&path).display())))?;
            toml::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", Path::new(&path).display())))
        }
    }
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = load_config().and_then(|cfg| dispatch(cli.command, &cfg, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(stderr, "numerical failure: {msg}");
            1
        }
    }
}

fn dispatch(cmd: Command, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Bands(a) => cmd_bands(a, cfg, stdout),
        Command::Construct(c) => cmd_construct(c, cfg, stdout),
        Command::Density(a) => cmd_density(a, cfg, stdout),
        Command::Diagnose(a) => cmd_diagnose(a, cfg, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, cfg, stdout),
        Command::Intersect(a) => cmd_intersect(a, cfg, stdout),
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Numerical(e.to_string())),
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn read_periodic(args: &PeriodicArgs) -> CliResult<PeriodicJacobi> {
    if let Some(path) = &args.periodic {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        if let Ok(spec) = serde_json::from_str::<CoefficientSpec>(&text) {
            return match spec {
                CoefficientSpec::Periodic { a, b } => Ok(PeriodicJacobi::new(a, b)?),
                CoefficientSpec::Constant { a, b } => Ok(PeriodicJacobi::new(vec![a], vec![b])?),
                _ => Err(usage("the periodic file must hold a Periodic or Constant spec")),
            };
        }
        return serde_json::from_str(&text).map_err(|e| usage(format!("cannot parse {}: {e}", path.display())));
    }
    let (Some(a), Some(b)) = (&args.a, &args.b) else {
        return Err(usage("give --a and --b, or --periodic FILE"));
    };
    if let Some(q) = args.q {
        if a.len() != q || b.len() != q {
            return Err(usage(format!("--q {q} does not match {} a-values and {} b-values", a.len(), b.len())));
        }
    }
    Ok(PeriodicJacobi::new(a.clone(), b.clone())?)
}

fn cmd_bands(args: BandsArgs, cfg: &Config, stdout: &mut dyn Write) -> CliResult<i32> {
    let p = read_periodic(&args.periodic)?;
    let tol = args.tol.or(cfg.tol).unwrap_or(defaults::TOL);
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(usage(format!("--tol must lie in (0, 1e-3], got {tol}")));
    }
    let bs = band_structure(&p, tol)?;
    let text = match args.format.or(cfg.format).unwrap_or(Format::Json) {
        Format::Json => to_json(&bs)?,
        Format::Csv => {
            let mut s = String::from("kind,index,lo,hi,open\n");
            for (i, [lo, hi]) in bs.bands.iter().enumerate() {
                let _ = writeln!(s, "band,{i},{lo:?},{hi:?},false");
            }
            for (i, g) in bs.gaps.iter().enumerate() {
                let _ = writeln!(s, "gap,{i},{:?},{:?},{}", g.lo, g.hi, g.open);
            }
            s
        }
    };
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(0)
}

fn cmd_construct(cmd: Construct, cfg: &Config, stdout: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Construct::Thm16(a) => {
            let spec = theorem16_sequence(a.lambda, a.gamma)?;
            let meta = json!({ "kind": "thm16", "spec": a.out, "lambda": a.lambda, "gamma": a.gamma });
            write_construction(&spec, meta, a.out.as_deref(), stdout)
        }
        Construct::Thm15(a) => {
            let mode = match a.mode.or(cfg.mode).unwrap_or(ModeArg::Empirical) {
                ModeArg::Analytic => ScheduleMode::Analytic,
                ModeArg::Empirical => ScheduleMode::Empirical,
            };
            let levels = a.levels.or(cfg.levels).unwrap_or(defaults::LEVELS);
            let cap = a.cap.or(cfg.cap).unwrap_or(defaults::CAP);
            let margin = a.margin.or(cfg.margin).unwrap_or(defaults::MARGIN);
            let schedule = build_schedule(a.q, a.lambda, levels, margin, cap, mode)?;
            let schedule_path = a.schedule_out.clone().or_else(|| a.out.as_ref().map(|o| o.with_extension("schedule.json")));
            if let Some(path) = &schedule_path {
                emit(&to_json(&schedule)?, Some(path), stdout)?;
            }
            let meta = json!({
                "kind": "thm15",
                "spec": a.out,
                "schedule": schedule_path,
                "mode": schedule.mode,
                "levels": schedule.levels.len(),
                "breakpoints": schedule.breakpoints(),
                "horizon": schedule.horizon(),
                "truncated": schedule.truncated,
            });
            write_construction(&theorem15_sequence(schedule)?, meta, a.out.as_deref(), stdout)
        }
    }
}

/// Spec to `out` and metadata to stdout, or both to stdout as `{"meta", "spec"}`.
fn write_construction(spec: &CoefficientSpec, meta: Value, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<i32> {
    match out {
        Some(path) => {
            emit(&to_json(spec)?, Some(path), stdout)?;
            emit(&to_json(&meta)?, None, stdout)?;
        }
        None => emit(&to_json(&json!({ "meta": meta, "spec": spec }))?, None, stdout)?,
    }
    Ok(0)
}

fn parse_grid(grid: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = grid.split(':').collect();
    let bad = || usage(format!("--grid must be lo:hi:points, got {grid:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let points: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if points == 0 || !lo.is_finite() || !hi.is_finite() || (points > 1 && hi < lo) {
        return Err(bad());
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect())
}

fn load_spec(path: &Path) -> CliResult<CoefficientSpec> {
    Ok(CoefficientSpec::load(path)?)
}

fn cmd_density(args: DensityArgs, cfg: &Config, stdout: &mut dyn Write) -> CliResult<i32> {
    let spec = load_spec(&args.spec)?;
    let xs = parse_grid(&args.grid)?;
    let aspec = ApproximantSpec::new(spec, args.q, args.blocks)?;
    let points = ac_density_grid(&aspec, &xs)?;
    let text = match args.format.or(cfg.format).unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("x,f,N,q,status\n");
            for p in &points {
                let f = p.density.map(|d| format!("{:?}", d.value)).unwrap_or_default();
                let _ = writeln!(s, "{:?},{},{},{},{}", p.x, f, args.blocks, args.q, p.status.replace(',', ";"));
            }
            s
        }
        Format::Json => to_json(&points)?,
    };
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(if points.iter().any(|p| p.density.is_some()) { 0 } else { 1 })
}

/// `(m, k, E, δ, comparison)` for the gap growth check.
type GapWindow = (usize, usize, f64, f64, PeriodicJacobi);

fn parse_gap(gap: &GapArgs) -> CliResult<Option<GapWindow>> {
    let Some(window) = &gap.verify_gap else {
        return Ok(None);
    };
    let parts: Vec<&str> = window.split(':').collect();
    let bad = || usage(format!("--verify-gap must be m:k:E:delta, got {window:?}"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let m = parts[0].parse().map_err(|_| bad())?;
    let k = parts[1].parse().map_err(|_| bad())?;
    let e = parts[2].parse().map_err(|_| bad())?;
    let d = parts[3].parse().map_err(|_| bad())?;
    let (Some(a), Some(b)) = (&gap.compare_a, &gap.compare_b) else {
        return Err(usage("--verify-gap needs --compare-a and --compare-b"));
    };
    Ok(Some((m, k, e, d, PeriodicJacobi::new(a.clone(), b.clone())?)))
}

fn run_gap_check(spec: &CoefficientSpec, gap: &GapArgs, tol: f64) -> CliResult<Option<Prop62Report>> {
    match parse_gap(gap)? {
        None => Ok(None),
        Some((m, k, e, d, cmp)) => Ok(Some(verify_prop62(spec, &cmp, m, k, e, d, tol)?)),
    }
}

fn cmd_diagnose(args: DiagnoseArgs, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    let spec = load_spec(&args.spec)?;
    let n = args.n.or(cfg.n).unwrap_or(defaults::N);
    if n < 2 {
        return Err(usage("--N must be at least 2"));
    }
    if let Some(h) = spec.horizon() {
        if n > h {
            return Err(usage(format!("--N {n} exceeds the horizon {h} of this sequence")));
        }
    }
    let mut traces = Vec::with_capacity(args.x.len());
    for &x in &args.x {
        if x.abs() > 5.0 {
            let _ = writeln!(stderr, "warning: x = {x} lies outside the crude spectral bound [-5, 5]");
        }
        traces.push(growth_statistic(&spec, x, n)?);
    }
    let prop62 = run_gap_check(&spec, &args.gap, cfg.tol.unwrap_or(defaults::TOL))?;
    let text = match args.format.or(cfg.format).unwrap_or(Format::Json) {
        Format::Json => {
            let per_x: Vec<Value> = traces
                .iter()
                .map(|t| {
                    json!({
                        "x": t.x,
                        "statistic": t.trace,
                        "running_max": t.running_max,
                        "log_running_max": t.log_running_max,
                        "argmax": t.argmax,
                        "final": t.statistic,
                        "log_final": t.log_statistic,
                    })
                })
                .collect();
            to_json(&json!({ "N": n, "traces": per_x, "gap_growth": prop62 }))?
        }
        Format::Csv => {
            let mut s = String::from("x,n,statistic,log_statistic,log_running_max\n");
            for t in &traces {
                for p in &t.trace {
                    let _ = writeln!(s, "{:?},{},{:?},{:?},{:?}", t.x, p.n, p.statistic, p.log_statistic, p.log_running_max);
                }
            }
            s
        }
    };
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(match prop62 {
        Some(r) if r.violations > 0 => 1,
        _ => 0,
    })
}

struct Row {
    check: &'static str,
    x: f64,
    m: usize,
    value: f64,
    tolerance: f64,
    status: &'static str,
}

fn row(check: &'static str, x: f64, m: usize, value: f64, tolerance: f64) -> Row {
    let status = if value <= tolerance { "pass" } else { "fail" };
    Row { check, x, m, value, tolerance, status }
}

fn cmd_verify(args: VerifyArgs, cfg: &Config, stdout: &mut dyn Write) -> CliResult<i32> {
    let spec = load_spec(&args.spec)?;
    let tol = args.tol.or(cfg.tol).unwrap_or(defaults::TOL);
    let aspec = ApproximantSpec::new(spec.clone(), args.q, args.blocks)?;
    let mut rows = Vec::new();
    for &x in &args.x {
        let z = Complex64::new(x, 0.0);
        let t = transfer_product(&spec, 1, (args.blocks + 1) * args.q, z)?;
        rows.push(row("det", x, args.blocks, t.det_defect(), 1e-8));
        for m in 0..=args.blocks {
            let blk = q_step_block(&spec, args.q, m, z)?;
            rows.push(row("trace_real", x, m, blk.delta.im.abs(), 1e-12));
            rows.push(row("block_det", x, m, (blk.phi.det() - 1.0).norm() / blk.phi.norm().powi(2).max(1.0), 1e-10));
            if blk.delta.re.abs() < 2.0 - 1e-6 {
                let s = pick_sign(&spec, args.q, m, x, x)?;
                let d = eigen_branch(&blk, s)?;
                rows.push(row("reconstruction", x, m, d.reconstruct().max_diff(&blk.phi) / blk.phi.norm().max(1.0), 1e-9));
            }
        }
        let last = q_step_block(&aspec, args.q, args.blocks, z)?;
        if last.delta.re.abs() < 2.0 - 1e-6 {
            let s = pick_sign(&aspec, args.q, args.blocks, x, x)?;
            let u = weyl_solution(&aspec, z, s)?;
            rows.push(row("wronskian", x, args.blocks, wronskian_defect(&u) / u.scale(), 1e-8));
        }
    }
    if let Some(rep) = run_gap_check(&spec, &args.gap, tol)? {
        for r in &rep.rows {
            rows.push(Row {
                check: "gap_growth",
                x: rep.energy,
                m: r.l,
                value: r.norm,
                tolerance: r.bound,
                status: if r.pass { "pass" } else { "fail" },
            });
        }
    }
    let mut s = String::from("check,x,index,value,tolerance,status\n");
    for r in &rows {
        let _ = writeln!(s, "{},{:?},{},{:?},{:?},{}", r.check, r.x, r.m, r.value, r.tolerance, r.status);
    }
    emit(&s, args.out.as_deref(), stdout)?;
    Ok(if rows.iter().any(|r| r.status == "fail") { 1 } else { 0 })
}

fn cmd_intersect(args: IntersectArgs, cfg: &Config, stdout: &mut dyn Write) -> CliResult<i32> {
    let tol = args.tol.or(cfg.tol).unwrap_or(defaults::TOL);
    let family: Vec<PeriodicJacobi> = match (&args.family, args.q, args.lambda) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("cannot parse {}: {e}", path.display())))?
        }
        (None, Some(q), Some(lambda)) => {
            if q == 0 || !(lambda > 0.0 && lambda < 2.0) {
                return Err(usage("need q >= 1 and lambda in (0, 2)"));
            }
            let points = args.points.or(cfg.points).unwrap_or(defaults::POINTS);
            if points < 2 {
                return Err(usage("--points must be at least 2"));
            }
            (0..points)
                .map(|i| {
                    let beta = -lambda + 2.0 * lambda * i as f64 / (points - 1) as f64;
                    PeriodicJacobi::new(vec![1.0; q], vec![beta; q])
                })
                .collect::<Result<_, _>>()?
        }
        _ => return Err(usage("give either --family FILE or both --q and --lambda")),
    };
    let mode = match args.mode.or(cfg.set).unwrap_or(SetArg::Spectrum) {
        SetArg::Spectrum => FamilyMode::Spectrum,
        SetArg::QInterior => FamilyMode::QInterior,
    };
    let sampling = match args.sampling.or(cfg.sampling).unwrap_or(SamplingArg::Path) {
        SamplingArg::Path => FamilySampling::Path,
        SamplingArg::Discrete => FamilySampling::Discrete,
    };
    let set = intersection_over_family(&family, mode, sampling, tol)?;
    let text = to_json(&json!({ "mode": mode, "sampling": sampling, "members": family.len(), "set": set, "display": set.to_string() }))?;
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(0)
}
