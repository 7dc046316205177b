//! Command-line front end.
//!
//! Each subcommand turns its arguments into a [`Table`]; writing, exit codes
//! and the output location are handled in one place.  Exit status is 0 on
//! success, 2 for usage or validation errors and 3 when a computation breaks
//! down numerically.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::contour::{Contour, DEFAULT_JUNCTION, DEFAULT_TILT, DEFAULT_TURN_RADIUS};
use crate::error::Error;
use crate::hankel::hankel_on_surface;
use crate::metric::{build_model, residual_curve, WeightsPolicy};
use crate::output::{Format, Table};
use crate::riemann::SurfacePoint;
use crate::shoot::{verify_detailed, ShootConfig, ShootResult, Trajectory};
use crate::spectrum::enumerate_spectrum;

pub const OUT_DIR_ENV: &str = "KNOTLAB_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "knotlab",
    version,
    about = "Bound states on winding complex contours"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    pub format: FormatArg,
    /// Output file; defaults to stdout, or to `<dir>/<subcommand>.<ext>`
    /// when an output directory is configured.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Default output directory.
    #[arg(long, env = OUT_DIR_ENV, global = true)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the contour as a polyline.
    Contour(ContourArgs),
    /// List admissible labels with exact ℓ, ν and optional coupling.
    Spectrum(SpectrumArgs),
    /// Tabulate Hankel functions on the surface.
    Hankel(HankelArgs),
    /// Check admissibility by integrating along the contour.
    Shoot(ShootArgs),
    /// Truncated metric sums for a random quasi-Hermitian model.
    Metric(MetricArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Contour(_) => "contour",
            Command::Spectrum(_) => "spectrum",
            Command::Hankel(_) => "hankel",
            Command::Shoot(_) => "shoot",
            Command::Metric(_) => "metric",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GeometryArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_JUNCTION)]
    pub s0: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_TILT)]
    pub eps: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_TURN_RADIUS)]
    pub r0: f64,
}

impl GeometryArgs {
    fn contour(&self, winding: u32) -> Result<Contour, Error> {
        Contour::new(winding, self.s0, self.eps, self.r0)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ContourArgs {
    #[arg(long = "N", default_value_t = 1)]
    pub winding: u32,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Half-width of the parameter range; defaults to `s0 + 10`.
    #[arg(long)]
    pub s_max: Option<f64>,
    /// Number of samples; defaults to a fixed density per turn.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long = "N", default_value_t = 1)]
    pub winding: i64,
    #[arg(long, default_value_t = 20)]
    pub m_max: i64,
    /// Spatial dimension; with `--partial-wave` adds the coupling columns.
    #[arg(long, requires = "partial_wave")]
    pub dim: Option<i64>,
    #[arg(long, requires = "dim")]
    pub partial_wave: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct HankelArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub nu: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,5,10,20")]
    pub rho: Vec<f64>,
    /// Unwrapped angles.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0",
        allow_hyphen_values = true
    )]
    pub theta: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ShootArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub nu: Vec<f64>,
    #[arg(long = "N", default_value_t = 1)]
    pub winding: u32,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub kappa: f64,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// `|Im κξ|` at the branch ends.
    #[arg(long, default_value_t = 4.0)]
    pub depth: f64,
    /// Scan `ν = k/DEN` for `k = 1..=KMAX`, given as `DEN:KMAX`.
    #[arg(long, value_name = "DEN:KMAX")]
    pub scan: Option<String>,
    /// Also write the trajectory of a single run to this file.
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightsArg {
    Biorthogonal,
    Unit,
}

#[derive(Debug, Clone, Args)]
pub struct MetricArgs {
    #[arg(long, default_value_t = 10)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub skew: f64,
    #[arg(long, value_enum, default_value_t = WeightsArg::Biorthogonal)]
    pub weights: WeightsArg,
    /// Write a JSON model summary (dim, skew, spectrum) to this file.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(e) if e.is_numerical() => 3,
            CliError::Compute(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

pub fn contour_table(args: &ContourArgs) -> Result<Table, CliError> {
    let c = args.geometry.contour(args.winding)?;
    let s_max = args.s_max.unwrap_or(args.geometry.s0 + 10.0);
    let n = args.samples.unwrap_or_else(|| c.default_sample_count());
    let mut t = Table::new(&["s", "x", "y", "theta", "sector"]);
    for row in c.export_polyline(-s_max, s_max, n)? {
        t.push(vec![
            row.s.into(),
            row.x.into(),
            row.y.into(),
            row.theta.into(),
            row.sector.map(|k| k.0).into(),
        ]);
    }
    Ok(t)
}

pub fn spectrum_table(args: &SpectrumArgs) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "N",
        "M",
        "ell_num",
        "ell_den",
        "nu_num",
        "nu_den",
        "gamma_num",
        "gamma_den",
    ]);
    for entry in enumerate_spectrum(args.winding, args.m_max)? {
        let entry = match (args.dim, args.partial_wave) {
            (Some(d), Some(m)) => entry.with_coupling(d, m)?,
            _ => entry,
        };
        t.push(vec![
            entry.winding.into(),
            entry.label.into(),
            (*entry.ell.numer()).into(),
            (*entry.ell.denom()).into(),
            (*entry.nu.numer()).into(),
            (*entry.nu.denom()).into(),
            entry.gamma.map(|g| *g.numer()).into(),
            entry.gamma.map(|g| *g.denom()).into(),
        ]);
    }
    Ok(t)
}

pub fn hankel_table(args: &HankelArgs) -> Result<Table, CliError> {
    let mut t = Table::new(&["nu", "rho", "theta", "re_h1", "im_h1", "re_h2", "im_h2"]);
    for &nu in &args.nu {
        for &rho in &args.rho {
            for &theta in &args.theta {
                let v = hankel_on_surface(nu, &SurfacePoint::new(rho, theta)?)?;
                t.push(vec![
                    nu.into(),
                    rho.into(),
                    theta.into(),
                    v.h1.re.into(),
                    v.h1.im.into(),
                    v.h2.re.into(),
                    v.h2.im.into(),
                ]);
            }
        }
    }
    Ok(t)
}

fn parse_scan(arg: &str) -> Result<Vec<f64>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--scan expects DEN:KMAX with positive integers, got {arg:?}"
        ))
    };
    let (den, kmax) = arg.split_once(':').ok_or_else(bad)?;
    let den: u32 = den.trim().parse().map_err(|_| bad())?;
    let kmax: u32 = kmax.trim().parse().map_err(|_| bad())?;
    if den == 0 || kmax == 0 {
        return Err(bad());
    }
    Ok((1..=kmax).map(|k| k as f64 / den as f64).collect())
}

pub fn shoot_orders(args: &ShootArgs) -> Result<Vec<f64>, CliError> {
    match &args.scan {
        Some(arg) => parse_scan(arg),
        None => Ok(args.nu.clone()),
    }
}

/// Run every order in parallel; results keep the input order.
pub fn shoot_runs(args: &ShootArgs) -> Result<Vec<(ShootResult, Trajectory)>, CliError> {
    let orders = shoot_orders(args)?;
    let c = args.geometry.contour(args.winding)?;
    let cfg = ShootConfig {
        tol: args.tol,
        depth: args.depth,
        ..ShootConfig::default()
    };
    cfg.validate()?;
    let runs: Result<Vec<_>, Error> = orders
        .par_iter()
        .map(|&nu| verify_detailed(nu, args.winding, args.kappa, &c, &cfg))
        .collect();
    Ok(runs?)
}

pub fn shoot_table(runs: &[(ShootResult, Trajectory)]) -> Table {
    let mut t = Table::new(&["nu", "N", "kappa", "ratio", "admissible", "wronskian_drift"]);
    for (r, _) in runs {
        t.push(vec![
            r.nu.into(),
            (r.winding as i64).into(),
            r.kappa.into(),
            r.ratio.into(),
            r.verdict.as_str().into(),
            r.wronskian_drift.into(),
        ]);
    }
    t
}

pub fn trajectory_table(traj: &Trajectory) -> Table {
    let mut t = Table::new(&["s", "x", "y", "re_psi", "im_psi", "scale_log"]);
    for p in &traj.points {
        t.push(vec![
            p.s.into(),
            p.z.re.into(),
            p.z.im.into(),
            p.psi.re.into(),
            p.psi.im.into(),
            p.scale_log.into(),
        ]);
    }
    t
}

fn metric_policy(w: WeightsArg) -> WeightsPolicy {
    match w {
        WeightsArg::Biorthogonal => WeightsPolicy::Biorthogonal,
        WeightsArg::Unit => WeightsPolicy::Unit,
    }
}

pub fn metric_table(args: &MetricArgs) -> Result<Table, CliError> {
    let model = build_model(args.dim, args.seed, args.skew)?;
    let mut t = Table::new(&["M", "residual"]);
    for p in residual_curve(&model, &metric_policy(args.weights))? {
        t.push(vec![(p.rank as i64).into(), p.residual.into()]);
    }
    Ok(t)
}

pub fn metric_summary(args: &MetricArgs) -> Result<serde_json::Value, CliError> {
    let model = build_model(args.dim, args.seed, args.skew)?;
    let spectrum: Vec<f64> = model
        .spectrum
        .iter()
        .map(|x| crate::output::format_float(*x).parse().expect("round trip"))
        .collect();
    Ok(json!({
        "dim": model.dim,
        "seed": model.seed,
        "skew": model.skew,
        "spectrum": spectrum,
    }))
}

fn write_to(path: Option<&Path>, table: &Table, format: Format) -> Result<(), CliError> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            table.write(format, io::BufWriter::new(fs::File::create(p)?))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

impl Cli {
    fn destination(&self) -> Option<PathBuf> {
        let ext = Format::from(self.format).extension();
        self.output.clone().or_else(|| {
            self.out_dir
                .as_ref()
                .map(|d| d.join(format!("{}.{ext}", self.command.name())))
        })
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let format = Format::from(cli.format);
    let dest = cli.destination();
    let table = match &cli.command {
        Command::Contour(a) => contour_table(a)?,
        Command::Spectrum(a) => spectrum_table(a)?,
        Command::Hankel(a) => hankel_table(a)?,
        Command::Shoot(a) => {
            let runs = shoot_runs(a)?;
            if let Some(path) = &a.trajectory {
                if runs.len() != 1 {
                    return Err(CliError::Usage(
                        "--trajectory needs exactly one order".into(),
                    ));
                }
                write_to(Some(path), &trajectory_table(&runs[0].1), format)?;
            }
            shoot_table(&runs)
        }
        Command::Metric(a) => {
            if let Some(path) = &a.summary {
                let text = serde_json::to_string_pretty(&metric_summary(a)?).expect("json") + "\n";
                fs::write(path, text)?;
            }
            metric_table(a)?
        }
    };
    write_to(dest.as_deref(), &table, format)
}

/// Parse arguments, run, report errors on stderr and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
