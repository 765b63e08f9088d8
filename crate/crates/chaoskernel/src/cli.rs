//! Command-line front end: argument parsing, configuration layering and report emission.
//!
//! Settings resolve as flag, then `CHAOSKERNEL_*` environment variable, then the JSON file
//! named by `--config`, then the built-in default.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::alpha::{alpha1_integral, alpha1_series, AlphaEval, SERIES_MIN_X};
use crate::density::{q_asymptotic_with, q_exact, ChaosPoint, DEFAULT_MU_THRESHOLD, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::model::{simulate_dudley, summarize, tangent_ensemble, Moment, PathConfig, Scheme, DEFAULT_STEPS_PER_UNIT};
use crate::special::{aux_eval, sh2cos2, sh2cos2_zeros, tan_fixed_points};
use crate::transforms::{flt_y, flt_z, phi, psi, FlQueryY, FlQueryZ, MarginalPoint};
use crate::validation::{run_all, ValidationOptions, CRITERIA};
use crate::Complex64;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 1;
/// Relative error claimed for closed-form evaluations.
pub const CLOSED_FORM_REL_ERROR: f64 = 1e-13;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Parser)]
#[command(name = "chaoskernel", version, about = "Exact and asymptotic density of the second-chaos tangent process")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    #[arg(long, global = true, env = "CHAOSKERNEL_FORMAT", value_enum)]
    pub format: Option<Format>,
    /// JSON file with any of: format, seed, workers, tol.
    #[arg(long, global = true, env = "CHAOSKERNEL_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = "CHAOSKERNEL_SEED")]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = "CHAOSKERNEL_WORKERS")]
    pub workers: Option<usize>,
    /// Quadrature tolerance for density evaluations.
    #[arg(long, global = true, env = "CHAOSKERNEL_TOL")]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and/or asymptotic density q_s at a point or along an x-sweep.
    Density(DensityArgs),
    /// Density of the second-chaos coordinate.
    Alpha(AlphaArgs),
    /// Closed-form Fourier–Laplace transforms.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Fixed points of tan and zeros of sh² + cos².
    Roots(RootsArgs),
    /// Monte Carlo ensembles with summary statistics.
    Simulate(SimulateArgs),
    /// Acceptance criteria with PASS/FAIL and measured-vs-threshold.
    Validate(ValidateArgs),
    /// Curve samples for external plotting.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// w,β,x,ζ,z
    #[arg(long, value_parser = parse_point5, allow_hyphen_values = true)]
    pub point: [f64; 5],
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub asymptotic: bool,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_MU_THRESHOLD)]
    pub mu_threshold: f64,
    /// Sweep x over `from:to:count`, replacing the x of --point.
    #[arg(long, value_parser = parse_range)]
    pub x_range: Option<(f64, f64, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaMethodArg {
    Auto,
    Series,
    Integral,
    Both,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, value_enum, default_value_t = AlphaMethodArg::Auto)]
    pub method: AlphaMethodArg,
}

#[derive(Debug, Subcommand)]
pub enum TransformCmd {
    /// E[exp(i r w_s + i c ∫w − (b²/2)∫w²)]
    FltZ {
        #[arg(long)]
        s: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        b: f64,
    },
    /// Joint transform of the tangent process.
    FltY {
        #[arg(long)]
        s: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        rho: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        b: f64,
    },
    /// Ψ(b) at (w, β, ζ, z).
    Psi {
        #[arg(long, value_parser = parse_point4, allow_hyphen_values = true)]
        point: [f64; 4],
        #[arg(long)]
        b: f64,
    },
    /// Φ(λ) at (w, β, ζ, z).
    Phi {
        #[arg(long, value_parser = parse_point4, allow_hyphen_values = true)]
        point: [f64; 4],
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        im: f64,
    },
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub tan_fixed_points: Option<usize>,
    #[arg(long)]
    pub sh2cos2_zeros: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Process {
    Dudley,
    Tangent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Euler,
    #[value(name = "exact-gaussian-plus-trapezoid")]
    ExactGaussianTrapezoid,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Euler => Scheme::Euler,
            SchemeArg::ExactGaussianTrapezoid => Scheme::ExactGaussianTrapezoid,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub process: Process,
    #[arg(long, default_value_t = 10_000)]
    pub paths: usize,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Grid steps per path; defaults to 4096 per unit time.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = SchemeArg::ExactGaussianTrapezoid)]
    pub scheme: SchemeArg,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Comma-separated criterion numbers; all by default.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<u8>,
    /// Multiplier on Monte Carlo sample sizes.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    Alpha,
    Aux,
    DensityX,
    AsymptoticX,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum)]
    pub curve: Curve,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// w,β,x,ζ,z for the density curves (x is swept).
    #[arg(long, value_parser = parse_point5, allow_hyphen_values = true)]
    pub point: Option<[f64; 5]>,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
}

fn parse_list<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

fn parse_point5(s: &str) -> std::result::Result<[f64; 5], String> {
    parse_list::<5>(s)
}

fn parse_point4(s: &str) -> std::result::Result<[f64; 4], String> {
    parse_list::<4>(s)
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected from:to:count".into());
    }
    let a = parts[0].parse::<f64>().map_err(|e| e.to_string())?;
    let b = parts[1].parse::<f64>().map_err(|e| e.to_string())?;
    let n = parts[2].parse::<usize>().map_err(|e| e.to_string())?;
    if n == 0 {
        return Err("count must be positive".into());
    }
    Ok((a, b, n))
}

/// Contents of a `--config` file; every field optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub tol: Option<f64>,
}

/// Settings after layering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub workers: Option<usize>,
    pub tol: f64,
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::invalid("config", format!("{}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text)
                    .map_err(|e| Error::invalid("config", format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let cfg = Self {
            format: args.format.or(file.format).unwrap_or(Format::Human),
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            workers: args.workers.or(file.workers),
            tol: args.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
        };
        if !(cfg.tol > 0.0 && cfg.tol < 1.0) {
            return Err(Error::invalid("config", format!("tol must lie in (0, 1), got {}", cfg.tol)));
        }
        if cfg.workers == Some(0) {
            return Err(Error::invalid("config", "workers must be at least 1"));
        }
        Ok(cfg)
    }
}

/// One result line of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub inputs: BTreeMap<String, f64>,
    pub value: Option<f64>,
    pub error_estimate: Option<f64>,
    pub method: String,
    pub flags: Vec<String>,
}

impl Row {
    fn new(method: &str, inputs: &[(&str, f64)], value: f64, error: f64) -> Self {
        Self {
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value: Some(value),
            error_estimate: Some(error),
            method: method.to_string(),
            flags: Vec::new(),
        }
    }

    fn flag(mut self, f: impl Into<String>) -> Self {
        self.flags.push(f.into());
        self
    }
}

/// Whole JSON document; also what [`emit_report`] produces for the JSON format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub unit: String,
    pub results: Vec<Row>,
}

/// Streams rows in one of the three formats as soon as they are produced.
pub struct Emitter<'a, W: Write> {
    out: &'a mut W,
    format: Format,
    command: String,
    seed: Option<u64>,
    unit: String,
    columns: Vec<String>,
    rows: usize,
    closed: bool,
}

impl<'a, W: Write> Emitter<'a, W> {
    /// `columns` fixes the CSV input columns, in order.
    pub fn begin(out: &'a mut W, format: Format, command: &str, seed: Option<u64>, unit: &str, columns: &[&str]) -> Result<Self> {
        let mut e = Self {
            out,
            format,
            command: command.to_string(),
            seed,
            unit: unit.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: 0,
            closed: false,
        };
        match format {
            Format::Json => {
                let head = serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "version": env!("CARGO_PKG_VERSION"),
                    "command": e.command,
                    "seed": seed,
                    "unit": e.unit,
                });
                let head = head.to_string();
                // Reopen the object to append the streamed array.
                write!(e.out, "{},\"results\":[", &head[..head.len() - 1]).map_err(io)?;
            }
            Format::Csv => {
                let mut header: Vec<String> = vec!["schema_version".into(), "command".into(), "seed".into(), "method".into()];
                header.extend(e.columns.iter().cloned());
                header.extend(["value", "error_estimate", "unit", "flags"].map(String::from));
                e.csv_line(&header)?;
            }
            Format::Human => {
                writeln!(e.out, "# {} (chaoskernel {}, schema {SCHEMA_VERSION})", e.command, env!("CARGO_PKG_VERSION")).map_err(io)?;
                if let Some(s) = seed {
                    writeln!(e.out, "# seed {s}").map_err(io)?;
                }
            }
        }
        Ok(e)
    }

    fn csv_line(&mut self, fields: &[String]) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(fields).map_err(|e| Error::invalid("emit_report", e.to_string()))?;
        let bytes = w.into_inner().map_err(|e| Error::invalid("emit_report", e.to_string()))?;
        self.out.write_all(&bytes).map_err(io)?;
        self.out.flush().map_err(io)
    }

    pub fn row(&mut self, row: &Row) -> Result<()> {
        match self.format {
            Format::Json => {
                let sep = if self.rows == 0 { "" } else { "," };
                let body = serde_json::to_string(row).map_err(|e| Error::invalid("emit_report", e.to_string()))?;
                write!(self.out, "{sep}{body}").map_err(io)?;
            }
            Format::Csv => {
                let fmt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
                let mut fields = vec![
                    SCHEMA_VERSION.to_string(),
                    self.command.clone(),
                    self.seed.map(|s| s.to_string()).unwrap_or_default(),
                    row.method.clone(),
                ];
                for c in &self.columns {
                    fields.push(fmt(row.inputs.get(c).copied()));
                }
                fields.extend([fmt(row.value), fmt(row.error_estimate), self.unit.clone(), row.flags.join(";")]);
                self.csv_line(&fields)?;
            }
            Format::Human => {
                let inputs: Vec<String> = row.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let value = row.value.map(|v| format!("{v:.12e}")).unwrap_or_else(|| "undefined".into());
                let err = row.error_estimate.map(|v| format!(" ± {v:.2e}")).unwrap_or_default();
                let flags = if row.flags.is_empty() { String::new() } else { format!("  [{}]", row.flags.join(", ")) };
                writeln!(self.out, "{:<14} {}  =  {value}{err} {}{flags}", row.method, inputs.join(" "), self.unit).map_err(io)?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.close()
    }

    fn close(&mut self) -> Result<()> {
        if self.closed {
            return Ok(());
        }
        self.closed = true;
        if self.format == Format::Json {
            writeln!(self.out, "]}}").map_err(io)?;
        }
        self.out.flush().map_err(io)
    }
}

// A failed sweep still leaves a well-formed document holding the rows completed so far.
impl<W: Write> Drop for Emitter<'_, W> {
    fn drop(&mut self) {
        let _ = self.close();
    }
}

fn io(e: std::io::Error) -> Error {
    Error::invalid("emit_report", e.to_string())
}

/// Writes a complete report; equivalent to streaming its rows through an [`Emitter`].
pub fn emit_report<W: Write>(report: &Report, format: Format, columns: &[&str], out: &mut W) -> Result<()> {
    let mut e = Emitter::begin(out, format, &report.command, report.seed, &report.unit, columns)?;
    for r in &report.results {
        e.row(r)?;
    }
    e.finish()
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write + Send,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match cfg.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &cfg, out)),
            Err(e) => Err(Error::invalid("workers", e.to_string())),
        },
        None => dispatch(&cli.command, &cfg, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidInput { .. } => EXIT_USAGE,
                _ => EXIT_NUMERIC,
            }
        }
    }
}

fn dispatch<W: Write + Send>(cmd: &Command, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    match cmd {
        Command::Density(a) => density(a, cfg, out),
        Command::Alpha(a) => alpha(a, cfg, out),
        Command::Transform(t) => transform(t, cfg, out),
        Command::Roots(r) => roots(r, cfg, out),
        Command::Simulate(s) => simulate(s, cfg, out),
        Command::Validate(v) => validate(v, cfg, out),
        Command::Export(x) => export(x, cfg, out),
    }
}

const POINT_COLUMNS: [&str; 6] = ["w", "beta", "x", "zeta", "z", "s"];

fn point_inputs(p: &ChaosPoint<f64>, s: f64) -> [(&'static str, f64); 6] {
    [("w", p.w), ("beta", p.beta), ("x", p.x), ("zeta", p.zeta), ("z", p.z), ("s", s)]
}

fn exact_row(p: &ChaosPoint<f64>, s: f64, tol: f64) -> Result<Row> {
    let q = q_exact(p, s, tol)?;
    let mut row = Row::new("exact", &point_inputs(p, s), q.value, q.error_estimate);
    if q.consistent_with_zero {
        row = row.flag("consistent-with-zero");
    }
    if p.x < p.support_edge(s) {
        row = row.flag("outside-support");
    }
    Ok(row)
}

fn asymptotic_row(p: &ChaosPoint<f64>, s: f64, eps: f64, mu_threshold: f64) -> Result<Row> {
    let a = q_asymptotic_with(p, s, eps, mu_threshold)?;
    let value = a.value.ok_or_else(|| {
        Error::domain("q_asymptotic", format!("asymptotic equivalent undefined: μ_s = {} ≤ 0", a.report.mu))
    })?;
    let mut inputs = point_inputs(p, s).to_vec();
    inputs.push(("mu", a.report.mu));
    inputs.push(("epsilon", eps));
    let mut row = Row {
        inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        value: Some(value),
        error_estimate: None,
        method: "asymptotic".into(),
        flags: vec!["error-unquantified".into()],
    };
    row = row.flag(match a.report.satisfied {
        crate::density::Regime::Condition22 => "regime-22",
        crate::density::Regime::Condition23 => "regime-23",
        crate::density::Regime::None => "regime-none",
    });
    Ok(row)
}

fn x_grid(from: f64, to: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![from];
    }
    (0..n).map(|i| from + (to - from) * i as f64 / (n - 1) as f64).collect()
}

fn density<W: Write>(a: &DensityArgs, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    let [w, beta, x, zeta, z] = a.point;
    let xs = match a.x_range {
        Some((from, to, n)) => x_grid(from, to, n),
        None => vec![x],
    };
    let (exact, asym) = if !a.exact && !a.asymptotic { (true, false) } else { (a.exact, a.asymptotic) };
    let mut cols = POINT_COLUMNS.to_vec();
    cols.extend(["mu", "epsilon"]);
    let mut e = Emitter::begin(out, cfg.format, "density", None, "per unit volume in (w,β,x,ζ,z)", &cols)?;
    for x in xs {
        let p = ChaosPoint::new(w, beta, x, zeta, z);
        if exact {
            e.row(&exact_row(&p, a.s, cfg.tol)?)?;
        }
        if asym {
            e.row(&asymptotic_row(&p, a.s, a.epsilon, a.mu_threshold)?)?;
        }
    }
    e.finish()?;
    Ok(EXIT_OK)
}

fn alpha_row(r: &AlphaEval<f64>, s: f64) -> Row {
    let s2 = s * s;
    let method = match r.method {
        crate::alpha::AlphaMethod::Series => "series",
        crate::alpha::AlphaMethod::Integral => "integral",
    };
    Row::new(method, &[("x", r.x * s2), ("s", s)], r.value / s2, r.est_error / s2)
}

fn alpha<W: Write>(a: &AlphaArgs, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    let mut e = Emitter::begin(out, cfg.format, "alpha", None, "per unit x", &["x", "s"])?;
    if !(a.s > 0.0) {
        return Err(Error::domain("alpha", format!("s must be positive, got {}", a.s)));
    }
    for &x in &a.x {
        let u = x / (a.s * a.s);
        let series = || alpha1_series(u);
        let integral = || alpha1_integral(u);
        match a.method {
            AlphaMethodArg::Series => e.row(&alpha_row(&series()?, a.s))?,
            AlphaMethodArg::Integral => e.row(&alpha_row(&integral()?, a.s))?,
            AlphaMethodArg::Auto => {
                let r = if u >= SERIES_MIN_X { series()? } else { integral()? };
                e.row(&alpha_row(&r, a.s))?
            }
            AlphaMethodArg::Both if u < SERIES_MIN_X => {
                e.row(&alpha_row(&integral()?, a.s).flag("series-unavailable"))?;
            }
            AlphaMethodArg::Both => {
                e.row(&alpha_row(&series()?, a.s))?;
                e.row(&alpha_row(&integral()?, a.s))?;
            }
        }
    }
    e.finish()?;
    Ok(EXIT_OK)
}

fn closed(method: &str, inputs: &[(&str, f64)], v: f64) -> Row {
    Row::new(method, inputs, v, CLOSED_FORM_REL_ERROR * v.abs())
}

fn transform<W: Write>(t: &TransformCmd, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    let rows: Vec<Row> = match *t {
        TransformCmd::FltZ { s, r, c, b } => {
            let v = flt_z(&FlQueryZ { s, r, c, b })?;
            vec![closed("flt_Z", &[("s", s), ("r", r), ("c", c), ("b", b)], v.re)]
        }
        TransformCmd::FltY { s, r, rho, gamma, c, b } => {
            let v = flt_y(&FlQueryY { s, r, rho, gamma, c, b })?;
            vec![closed("flt_Y", &[("s", s), ("r", r), ("rho", rho), ("gamma", gamma), ("c", c), ("b", b)], v.re)]
        }
        TransformCmd::Psi { point: [w, beta, zeta, z], b } => {
            let v = psi(&MarginalPoint::new(w, beta, zeta, z), b)?;
            vec![closed("psi", &[("w", w), ("beta", beta), ("zeta", zeta), ("z", z), ("b", b)], v)]
        }
        TransformCmd::Phi { point: [w, beta, zeta, z], re, im } => {
            let v = phi(&MarginalPoint::new(w, beta, zeta, z), Complex64::new(re, im))?;
            let inputs = [("w", w), ("beta", beta), ("zeta", zeta), ("z", z), ("re", re), ("im", im)];
            vec![
                Row::new("phi_re", &inputs, v.re, CLOSED_FORM_REL_ERROR * v.norm()),
                Row::new("phi_im", &inputs, v.im, CLOSED_FORM_REL_ERROR * v.norm()),
            ]
        }
    };
    let cols = ["s", "r", "rho", "gamma", "c", "b", "w", "beta", "zeta", "z", "re", "im"];
    let mut e = Emitter::begin(out, cfg.format, "transform", None, "dimensionless", &cols)?;
    for r in &rows {
        e.row(r)?;
    }
    e.finish()?;
    Ok(EXIT_OK)
}

fn roots<W: Write>(a: &RootsArgs, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    if a.tan_fixed_points.is_none() && a.sh2cos2_zeros.is_none() {
        return Err(Error::invalid("roots", "give --tan-fixed-points and/or --sh2cos2-zeros"));
    }
    let mut e = Emitter::begin(out, cfg.format, "roots", None, "dimensionless", &["index", "im"])?;
    if let Some(n) = a.tan_fixed_points {
        for r in tan_fixed_points::<f64>(n)? {
            e.row(&Row::new("tan_fixed_point", &[("index", r.index as f64)], r.value, r.residual.abs()))?;
        }
    }
    if let Some(n) = a.sh2cos2_zeros {
        for (k, z) in sh2cos2_zeros::<f64>(n)?.into_iter().enumerate() {
            e.row(&Row::new("sh2cos2_zero", &[("index", k as f64), ("im", z.im)], z.re, sh2cos2(z).norm()))?;
        }
    }
    e.finish()?;
    Ok(EXIT_OK)
}

fn moment_row(m: &Moment, paths: usize, s: f64, steps: usize) -> Row {
    Row::new(&format!("mean_{}", m.name), &[("paths", paths as f64), ("s", s), ("steps", steps as f64)], m.mean, m.std_error)
        .flag("mc-standard-error")
}

fn simulate<W: Write>(a: &SimulateArgs, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    if a.paths < 2 {
        return Err(Error::invalid("simulate", "need at least 2 paths for a standard error"));
    }
    let steps = a.steps.unwrap_or(((a.s * DEFAULT_STEPS_PER_UNIT as f64).ceil() as usize).max(1));
    let pc = PathConfig::new(a.s, steps, cfg.seed, a.scheme.into())?;
    let moments = match a.process {
        Process::Tangent => summarize(&tangent_ensemble(&pc, a.paths)?),
        Process::Dudley => {
            use rayon::prelude::*;
            let ends: Vec<_> = (0..a.paths as u64)
                .into_par_iter()
                .map(|i| simulate_dudley(&pc, i).map(|p| p[p.len() - 1]))
                .collect::<Result<_>>()?;
            vec![
                Moment::of("lambda", ends.iter().map(|e| e.point.lambda)),
                Moment::of("mu", ends.iter().map(|e| e.point.mu)),
                Moment::of("x", ends.iter().map(|e| e.point.x)),
                Moment::of("y", ends.iter().map(|e| e.point.y)),
                Moment::of("z", ends.iter().map(|e| e.point.z)),
            ]
        }
    };
    let mut e = Emitter::begin(out, cfg.format, "simulate", Some(cfg.seed), "coordinate units", &["paths", "s", "steps"])?;
    for m in &moments {
        e.row(&moment_row(m, a.paths, a.s, steps))?;
    }
    e.finish()?;
    Ok(EXIT_OK)
}

fn validate<W: Write>(a: &ValidateArgs, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    if !(a.scale > 0.0) {
        return Err(Error::invalid("validate", "scale must be positive"));
    }
    let ids: Vec<u8> = if a.criteria.is_empty() { CRITERIA.to_vec() } else { a.criteria.clone() };
    let opts = ValidationOptions { seed: cfg.seed, scale: a.scale };
    let mut all = true;
    if cfg.format == Format::Human {
        for id in ids {
            let o = run_all(&[id], &opts)?.remove(0);
            all &= o.passed;
            writeln!(out, "{}", o.line()).map_err(io)?;
            out.flush().map_err(io)?;
        }
        return Ok(if all { EXIT_OK } else { EXIT_NUMERIC });
    }
    let mut e = Emitter::begin(out, cfg.format, "validate", Some(cfg.seed), "criterion-specific", &["criterion", "threshold"])?;
    for id in ids {
        let o = run_all(&[id], &opts)?.remove(0);
        all &= o.passed;
        let row = Row {
            inputs: [("criterion".to_string(), o.id as f64), ("threshold".to_string(), o.threshold)].into_iter().collect(),
            value: o.measured.is_finite().then_some(o.measured),
            error_estimate: None,
            method: o.name.to_string(),
            flags: vec![if o.passed { "PASS" } else { "FAIL" }.to_string(), o.detail.clone()],
        };
        e.row(&row)?;
    }
    e.finish()?;
    Ok(if all { EXIT_OK } else { EXIT_NUMERIC })
}

fn export<W: Write>(a: &ExportArgs, cfg: &RunConfig, out: &mut W) -> Result<i32> {
    if a.n == 0 {
        return Err(Error::invalid("export", "n must be positive"));
    }
    let grid = x_grid(a.from, a.to, a.n);
    let cols = ["x", "xi", "s", "w", "beta", "zeta", "z", "mu"];
    let unit = match a.curve {
        Curve::Alpha => "per unit x",
        Curve::Aux => "dimensionless",
        Curve::DensityX | Curve::AsymptoticX => "per unit volume in (w,β,x,ζ,z)",
    };
    let mut e = Emitter::begin(out, cfg.format, "export", None, unit, &cols)?;
    match a.curve {
        Curve::Alpha => {
            for x in grid {
                let r = crate::alpha::alpha1(x / (a.s * a.s))?;
                e.row(&alpha_row(&r, a.s))?;
            }
        }
        Curve::Aux => {
            for xi in grid {
                let v = aux_eval(xi)?;
                for (name, val) in [("F_r", v.f_r), ("F_i", v.f_i), ("U_r", v.u_r), ("U_i", v.u_i), ("V_r", v.v_r), ("V_i", v.v_i)] {
                    e.row(&closed(name, &[("xi", xi)], val))?;
                }
            }
        }
        Curve::DensityX | Curve::AsymptoticX => {
            let [w, beta, _, zeta, z] = a.point.ok_or_else(|| Error::invalid("export", "--point is required for density curves"))?;
            for x in grid {
                let p = ChaosPoint::new(w, beta, x, zeta, z);
                let row = if a.curve == Curve::DensityX {
                    exact_row(&p, a.s, cfg.tol)?
                } else {
                    asymptotic_row(&p, a.s, 0.5, DEFAULT_MU_THRESHOLD)?
                };
                e.row(&row)?;
            }
        }
    }
    e.finish()?;
    Ok(EXIT_OK)
}
