//! The `gridhfk` command line: argument definitions and the three commands.
//!
//! Exit codes: 0 success, 1 a fixture did not match, 2 unreadable or invalid
//! input, 3 an internal consistency check failed during the computation.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::AlexanderRange;
use crate::fixtures::{self, compute, ComputeError, FixtureRecord, GridSpec, VerifyOptions};
use crate::grid::GridDiagram;
use crate::moves::simplify;
use crate::spectral::TauResult;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gridhfk", version, about = "Knot Floer homology, tau and the E2 page from grid diagrams")]
pub struct Cli {
    /// Worker threads for enumeration and reduction (default: all cores).
    #[arg(long, global = true, env = "HFK_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute HFK (and optionally tau and E2) of a grid file.
    Compute(ComputeArgs),
    /// Look for a smaller grid of the same knot by random grid moves.
    Simplify(SimplifyArgs),
    /// Recompute a JSON fixture file and compare.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    /// Alexander gradings >= 0, the rest filled in by symmetry.
    Nonneg,
    /// Every Alexander grading.
    Full,
}

impl From<RangeArg> for AlexanderRange {
    fn from(r: RangeArg) -> Self {
        match r {
            RangeArg::Nonneg => AlexanderRange::NonNegative,
            RangeArg::Full => AlexanderRange::Full,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub grid: PathBuf,
    #[arg(long, value_enum, default_value_t = RangeArg::Nonneg)]
    pub range: RangeArg,
    /// Also compute tau.
    #[arg(long)]
    pub tau: bool,
    /// Also print the E2 page.
    #[arg(long)]
    pub e2: bool,
    /// Work with the mirror knot (columns reversed).
    #[arg(long)]
    pub mirror: bool,
    /// Print a JSON record instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    #[arg(long)]
    pub grid: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of moves to try.
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    /// Where to write the smallest grid found (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub fixtures: PathBuf,
    /// Also accept a record that matches the mirror knot.
    #[arg(long)]
    pub allow_mirror: bool,
    #[arg(long, value_enum, default_value_t = RangeArg::Nonneg)]
    pub range: RangeArg,
}

/// A failed command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<ComputeError> for CliError {
    fn from(e: ComputeError) -> Self {
        CliError::internal(e.to_string())
    }
}

pub fn read_grid(path: &Path) -> Result<GridDiagram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    text.parse().map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Runs a parsed command line, writing results to `out` and diagnostics to
/// `err`, and returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args, out),
        Command::Simplify(args) => cmd_simplify(args, out, err),
        Command::Verify(args) => cmd_verify(args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn cmd_compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut grid = read_grid(&args.grid)?;
    if args.mirror {
        grid = grid.mirror();
    }
    let spectral = args.tau || args.e2 || args.json;
    let computed = compute(&grid, args.range.into(), spectral)?;
    if args.json {
        let (tau, tau_reason) = match &computed.tau {
            Some(TauResult::Value(v)) => (Some(*v), None),
            Some(TauResult::Indeterminate(why)) => (None, Some(why.clone())),
            None => (None, None),
        };
        let record = FixtureRecord {
            name: args
                .grid
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            grid: Some(GridSpec::from(&grid)),
            hfk: computed.hfk,
            tau,
            tau_reason,
            e2: computed.e2,
        };
        let text = serde_json::to_string_pretty(&record).map_err(|e| CliError::internal(e.to_string()))?;
        writeln!(out, "{text}")?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{}", computed.hfk)?;
    if args.tau {
        if let Some(tau) = &computed.tau {
            writeln!(out, "tau: {tau}")?;
        }
    }
    if args.e2 {
        if let Some(e2) = &computed.e2 {
            writeln!(out, "E2: {e2}")?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_simplify(args: &SimplifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let grid = read_grid(&args.grid)?;
    let result = simplify(&grid, args.seed, args.budget);
    let sizes: Vec<String> = result.sizes.iter().map(usize::to_string).collect();
    writeln!(err, "sizes: {}", sizes.join(" -> "))?;
    writeln!(
        err,
        "best: {} (from {}, {} moves tried)",
        result.grid.size(),
        grid.size(),
        result.moves_tried
    )?;
    match &args.out {
        Some(path) => std::fs::write(path, result.grid.to_text())?,
        None => write!(out, "{}", result.grid.to_text())?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let records = fixtures::load_fixtures(&args.fixtures).map_err(|e| CliError::input(e.to_string()))?;
    let opts = VerifyOptions {
        range: args.range.into(),
        allow_mirror: args.allow_mirror,
    };
    let mut failures = 0;
    for record in &records {
        for problem in record.sanity_problems() {
            writeln!(out, "WARN {}: {problem}", record.name)?;
        }
        let report = fixtures::verify_record(record, opts);
        writeln!(out, "{report}")?;
        if !report.passed() {
            failures += 1;
        }
    }
    writeln!(out, "{} records, {} failed", records.len(), failures)?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
}
