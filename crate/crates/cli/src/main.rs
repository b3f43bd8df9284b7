//! `peglab`: inscribed squares, cylinder curves and non-crossing sums from
//! the command line.
//!
//! Every subcommand writes a JSON report (stdout or `--report`) and a
//! one-line summary on stderr. Exit status: 0 pass, 2 finding, 1 error.

mod adf;
mod bridge;
mod files;
mod square;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use peglab::scalar::ArithMode;
use peglab::Rational;

use files::{rational_arg, Outcome};

#[derive(Parser)]
#[command(name = "peglab", version, about)]
struct Cli {
    /// Arithmetic for commands that support both; `PEGLAB_MODE` overrides.
    #[arg(long, value_enum, global = true, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Inscribed square between two Lipschitz graphs.
    FindSquare(FindArgs),
    /// Inscribed isosceles trapezoid with vertices (0,0), (1,0), (s+1,r), (-s,r).
    FindTrapezoid {
        #[command(flatten)]
        find: FindArgs,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        r: f64,
    },
    /// Residual of the conserved integral along a square-traversing family.
    Conserved(ConservedArgs),
    /// Area under a curve and, for closed planar curves, signed area.
    Area {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Compress a periodic curve into a bounded one.
    Pinch {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 64)]
        n: u32,
        #[arg(long, default_value_t = 9)]
        periods: u32,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Look for a square with vertex k on curve k, for four cylinder curves.
    Joint(QuadArgs),
    /// Alternating area sum of four cylinder curves.
    AreaIneq {
        #[arg(long, num_args = 4, required = true)]
        curves: Vec<PathBuf>,
    },
    /// Non-crossing sums instances.
    #[command(subcommand)]
    Adf(adf::AdfCommand),
    /// Curves built from instances, their fibers and dynamics.
    #[command(subcommand)]
    Bridge(bridge::BridgeCommand),
    /// Zero-sum fibers of three cylinder curves.
    #[command(subcommand)]
    Sai(bridge::SaiCommand),
    /// Draw curves, function pairs or winding profiles.
    Plot(square::PlotArgs),
}

#[derive(Args)]
struct FindArgs {
    /// Pair file with lower function `f` and upper function `g`.
    #[arg(long)]
    curves: PathBuf,
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Report every bracketed crossing.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct ConservedArgs {
    /// Family traced from a pair file.
    #[arg(long, conflicts_with_all = ["rotating", "points"])]
    curves: Option<PathBuf>,
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    /// Rotating square `(cos t, sin t)` sampled at this many points.
    #[arg(long, conflicts_with = "points")]
    rotating: Option<usize>,
    /// Random piecewise-linear family with this many points.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long, num_args = 4, required = true)]
    curves: Vec<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Jitter used when the curves are not in general position.
    #[arg(long, default_value = "1/64", value_parser = rational_arg)]
    magnitude: Rational,
}

fn run(cli: Cli) -> Result<Outcome> {
    let default = match cli.mode {
        Mode::Exact => ArithMode::Exact,
        Mode::Float => ArithMode::Float,
    };
    let mode = ArithMode::from_env(default)?;
    let out = cli.report.as_deref();
    match cli.command {
        Command::FindSquare(a) => square::find(&a, None, out),
        Command::FindTrapezoid { find, s, r } => square::find(&find, Some((s, r)), out),
        Command::Conserved(a) => square::conserved(&a, mode, out),
        Command::Area { curve } => square::area(&curve, mode, out),
        Command::Pinch { curve, n, periods, svg } => square::pinch(&curve, n, periods, svg.as_deref(), out),
        Command::Joint(a) => square::joint(&a, out),
        Command::AreaIneq { curves } => square::area_ineq(&curves, mode, out),
        Command::Adf(c) => adf::run(c, out),
        Command::Bridge(c) => bridge::run(c, out),
        Command::Sai(c) => bridge::run_sai(c, out),
        Command::Plot(a) => square::plot(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version go to stdout and are not failures.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
