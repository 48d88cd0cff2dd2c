//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::collective::ModelParams;
use crate::csv_out::emit_csv;
use crate::error::{Error, Result};
use crate::figures::{preset, run_figure, CurveRows};
use crate::oracle::MAX_ORACLE_QUBITS;
use crate::sweep::{
    find_threshold, linear_grid, run_sweep, Axis, Quantity, SweepSpec, ThresholdOutcome, ThresholdQuery, Witness,
    DEFAULT_POSITIVITY_FLOOR, DEFAULT_TOLERANCE,
};
use crate::verify::{run_all, SuiteResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "THERMAL_BELL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "thermal-bell", version, about = "Thermal Bell violation, concurrence and disorder in the collective Heisenberg model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep one axis and write CSV.
    Sweep(SweepArgs),
    /// Locate the last axis value where a witness is positive.
    Threshold(ThresholdArgs),
    /// Reproduce a built-in scenario as CSV.
    Figure(FigureArgs),
    /// Run the cross-validation suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Temperature,
    Field,
    LambdaOverT,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Temperature => Axis::Temperature,
            AxisArg::Field => Axis::Field,
            AxisArg::LambdaOverT => Axis::LambdaOverT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    #[value(name = "M")]
    M,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
    #[value(name = "chsh_max")]
    ChshMax,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::M => Quantity::M,
            QuantityArg::C => Quantity::C,
            QuantityArg::D => Quantity::D,
            QuantityArg::ChshMax => Quantity::ChshMax,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessArg {
    #[value(name = "M")]
    M,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

impl From<WitnessArg> for Witness {
    fn from(w: WitnessArg) -> Self {
        match w {
            WitnessArg::M => Witness::M,
            WitnessArg::C => Witness::C,
            WitnessArg::D => Witness::D,
        }
    }
}

/// Model parameters shared by `sweep` and `threshold`. The swept quantity's
/// flag is ignored.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Number of qubits.
    #[arg(long)]
    pub n: usize,
    /// Coupling J (λ on the lambda-over-t axis).
    #[arg(long, allow_negative_numbers = true)]
    pub j: f64,
    /// Anisotropy Δ.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Magnetic field B.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub b: f64,
    /// Temperature, required on the field axis.
    #[arg(long)]
    pub t: Option<f64>,
}

impl ModelArgs {
    fn base(&self, axis: Axis) -> Result<ModelParams> {
        let t = match (axis, self.t) {
            (Axis::Field, None) => {
                return Err(Error::InvalidParameter("--t is required on the field axis".into()))
            }
            (_, Some(t)) => t,
            (_, None) => 1.0,
        };
        ModelParams::from_temperature(self.n, self.j, self.delta, self.b, t)
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long)]
    pub points: usize,
    /// Comma-separated subset of M,C,D,chsh_max.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "M,C,D,chsh_max")]
    pub quantities: Vec<QuantityArg>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub quantity: WitnessArg,
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Values at or below this count as non-positive.
    #[arg(long, default_value_t = DEFAULT_POSITIVITY_FLOOR)]
    pub floor: f64,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub id: u8,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn sweep(args: &SweepArgs) -> Result<Vec<CurveRows>> {
    if args.points == 0 {
        return Err(Error::InvalidParameter("--points must be at least 1".into()));
    }
    let axis = Axis::from(args.axis);
    let base = match axis {
        Axis::Temperature => args.model.base(axis)?.with_temperature(args.from.max(f64::MIN_POSITIVE))?,
        _ => args.model.base(axis)?,
    };
    let quantities: Vec<Quantity> = args.quantities.iter().copied().map(Quantity::from).collect();
    let spec = SweepSpec::new(axis, linear_grid(args.from, args.to, args.points), base, quantities.clone())?;
    let m = &args.model;
    let label = match axis {
        Axis::Temperature => format!("N={} J={} Delta={} B={}", m.n, m.j, m.delta, m.b),
        Axis::Field => format!("N={} J={} Delta={} T={}", m.n, m.j, m.delta, base.temperature()),
        Axis::LambdaOverT => format!("N={} lambda={}", m.n, m.j),
    };
    Ok(vec![CurveRows { label, axis, quantities, rows: run_sweep(&spec)? }])
}

fn threshold(args: &ThresholdArgs, out: &mut dyn Write) -> Result<()> {
    let axis = Axis::from(args.axis);
    let query = ThresholdQuery::new(args.quantity.into(), axis, (args.lo, args.hi), args.model.base(axis)?)
        .with_tolerance(args.tol)
        .with_floor(args.floor);
    let line = match find_threshold(&query)? {
        ThresholdOutcome::Crossing(x) => format!("{x:.6}"),
        ThresholdOutcome::NeverPositive => "no crossing: never positive on the bracket".to_string(),
        ThresholdOutcome::PositiveThroughout => "no crossing: positive throughout the bracket".to_string(),
    };
    writeln!(out, "{line}").map_err(|e| Error::Io { path: "stdout".into(), message: e.to_string() })
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    if !(2..=MAX_ORACLE_QUBITS).contains(&args.max_n) {
        return Err(Error::InvalidParameter(format!(
            "--max-n must be in 2..={MAX_ORACLE_QUBITS}, got {}",
            args.max_n
        )));
    }
    let suites = run_all(args.max_n, args.seed)?;
    let io = |e: std::io::Error| Error::Io { path: "stdout".into(), message: e.to_string() };
    for s in &suites {
        writeln!(
            out,
            "{} {:<22} worst {:.3e} (tol {:.0e}, {} cases) {}",
            if s.passed { "PASS" } else { "FAIL" },
            s.name,
            s.worst_error,
            s.tolerance,
            s.cases,
            s.detail
        )
        .map_err(io)?;
    }
    Ok(verify_exit_code(&suites) == EXIT_OK)
}

/// 0 when every suite passed, 1 otherwise.
pub fn verify_exit_code(suites: &[SuiteResult]) -> i32 {
    if suites.iter().all(|s| s.passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    // A pool may already exist when `run` is called more than once in one
    // process; the first configuration wins.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    configure_threads()?;
    match &cli.command {
        Command::Sweep(args) => {
            let curves = sweep(args)?;
            emit_csv(&curves, &args.out)?;
        }
        Command::Threshold(args) => threshold(args, out)?,
        Command::Figure(args) => {
            let curves = run_figure(&preset(args.id)?)?;
            emit_csv(&curves, &args.out)?;
        }
        Command::Verify(args) => {
            if !verify(args, out)? {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Normal output goes to `out`, diagnostics to stderr.
pub fn run_with_output<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_output(argv, &mut std::io::stdout().lock())
}
