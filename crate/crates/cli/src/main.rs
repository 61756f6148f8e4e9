//! `beamsplit`: beam-splitter scans and engine comparisons.
//!
//! Exit codes: 0 success, 1 tolerance failure, 2 usage or configuration error.

mod commands;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use beamsplit_core::{BeamSplitter, Complex, DEFAULT_TAIL_TOL, DEFAULT_UNITARITY_TOL};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::{Report, Status};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "BEAMSPLIT_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "beamsplit",
    version,
    about = "Beam-splitter scans and engine comparisons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Two-photon interference versus transmittance, computed by both engines.
    HomScan(HomScanArgs),
    /// Output amplitudes of one input state from both engines, side by side.
    Compare(CompareArgs),
    /// Interference of two squeezed vacua across a grid of squeezing phases.
    SqueezeInterfere(SqueezeArgs),
    /// Coherent-superposition synthesis of number states and squeezed vacua.
    SynthCheck(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; `-` writes to standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Directory for `<command>.<format>` when `--output` is absent.
    #[arg(long, env = OUTPUT_DIR_ENV)]
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BsArgs {
    /// Transmission and reflection coefficients t and r.
    #[arg(long, num_args = 4, value_names = ["T_RE", "T_IM", "R_RE", "R_IM"], allow_negative_numbers = true)]
    bs: Option<Vec<f64>>,
    /// t = 1/√2, r = i/√2.
    #[arg(long)]
    balanced: bool,
}

impl BsArgs {
    pub fn splitter(&self) -> beamsplit_core::Result<BeamSplitter> {
        match &self.bs {
            Some(v) => BeamSplitter::new(
                Complex::new(v[0], v[1]),
                Complex::new(v[2], v[3]),
                DEFAULT_UNITARITY_TOL,
            ),
            None => Ok(BeamSplitter::balanced()),
        }
    }
}

#[derive(Debug, Args)]
pub struct HomScanArgs {
    /// Grid points over transmittance [0, 1], endpoints included.
    #[arg(long, default_value_t = 51, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,
    #[arg(long, default_value_t = 16)]
    pub nodes: usize,
    /// Largest tolerated disagreement between engines.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Number-state input |m⟩|n⟩.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    pub fock: Option<Vec<usize>>,
    /// Coherent input |α⟩|β⟩.
    #[arg(long, num_args = 4, value_names = ["A_RE", "A_IM", "B_RE", "B_IM"], allow_negative_numbers = true)]
    pub coherent: Option<Vec<f64>>,
    /// Squeezed vacua with phase `--phi` on mode a and 0 on mode b.
    #[arg(long)]
    pub squeezed: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub bs: BsArgs,
    #[arg(long, default_value_t = 0.4)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Fock cutoff; chosen from the input when absent.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Quadrature nodes per mode; chosen from the cutoff when absent.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    pub tail_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SqueezeArgs {
    #[command(flatten)]
    pub bs: BsArgs,
    #[arg(long, default_value_t = 0.4)]
    pub s: f64,
    /// Grid points over φ ∈ [0, 2π], endpoints included.
    #[arg(long, default_value_t = 51, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    pub tail_tol: f64,
    /// Largest tolerated infidelity between engines.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Number states |0⟩ … |max-n⟩ on circles.
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Circle radii; the default radius √max(n, 1) is always added.
    #[arg(long, num_args = 1.., default_values_t = [0.5, 2.0])]
    pub radius: Vec<f64>,
    /// Squeezing strengths for line synthesis.
    #[arg(long, num_args = 1.., default_values_t = [0.1, 0.5, 1.0, 1.5])]
    pub s: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 32)]
    pub n_max: usize,
    #[arg(long, default_value_t = 40)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<beamsplit_core::Error> for Failure {
    fn from(e: beamsplit_core::Error) -> Self {
        Failure::Usage(format!("{}: {e}", e.kind()))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn emit(report: &Report, out: &OutputArgs) -> Result<(), Failure> {
    let path = match (&out.output, &out.output_dir) {
        (Some(p), _) if p.as_os_str() == "-" => None,
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            std::fs::create_dir_all(dir)?;
            Some(dir.join(format!("{}.{}", report.command, out.format.extension())))
        }
        (None, None) => None,
    };
    let mut sink: Box<dyn Write> = match &path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match out.format {
        Format::Json => report.write_json(&mut sink)?,
        Format::Csv => report.write_csv(&mut sink)?,
    }
    sink.flush()?;
    if let Some(p) = path {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Status, Failure> {
    let (report, out) = match &cli.command {
        Command::HomScan(a) => (commands::hom_scan(a)?, &a.out),
        Command::Compare(a) => (commands::compare(a)?, &a.out),
        Command::SqueezeInterfere(a) => (commands::squeeze_interfere(a)?, &a.out),
        Command::SynthCheck(a) => (commands::synth_check(a)?, &a.out),
    };
    emit(&report, out)?;
    let verdict = match report.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
    };
    let summary: Vec<String> = report
        .summary
        .iter()
        .filter_map(|(k, v)| match v {
            report::Cell::Real(x) => Some(format!("{k}={x:.3e}")),
            _ => None,
        })
        .collect();
    eprintln!("{}: {verdict} ({})", report.command, summary.join(", "));
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: output: {e}");
            ExitCode::from(2)
        }
    }
}
