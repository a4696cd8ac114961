//! `qcalc`: run the verification suites or dump presets, suites and derived objects.
//!
//! Exit codes: 0 when every entry passes (flagged entries included), 1 when some
//! entry fails, 2 on usage or load errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qcalc::expr_io::suite::SuiteFile;
use qcalc::runner::{self, Options};
use qcalc::LoadError;

#[derive(Parser)]
#[command(name = "qcalc", version, about = "Exact verifier for q-deformed group calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites and print a report.
    Verify(VerifyArgs),
    /// Print a preset, a suite or a derived object.
    Dump {
        #[arg(value_enum)]
        kind: DumpKind,
        name: String,
        /// Extra suite files to make available to `dump suite`.
        #[arg(long = "file")]
        files: Vec<PathBuf>,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Glob over suite names, e.g. `relations/*` or `sigma/cosets`.
    #[arg(long, default_value = "*")]
    suite: String,
    /// Also evaluate every identity at this rational q (e.g. 7/10) and compare.
    #[arg(long, value_parser = parse_rational)]
    q: Option<BigRational>,
    /// Truncation order of the series checks.
    #[arg(long, default_value_t = 6)]
    order: u32,
    /// Largest monomial degree acted on by the vector-field checks.
    #[arg(long = "max-degree", default_value_t = 3)]
    max_degree: usize,
    /// Seed of the random confluence probe.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Additional identity-suite JSON files.
    #[arg(long = "file")]
    files: Vec<PathBuf>,
    /// Record wall-clock times in the report (not reproducible between runs).
    #[arg(long)]
    timings: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpKind {
    Preset,
    Suite,
    Derivation,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("`{s}` is not a rational number: {e}"))
}

fn load_files(paths: &[PathBuf]) -> Result<Vec<SuiteFile>, LoadError> {
    paths
        .iter()
        .map(|p| {
            let origin = p.display().to_string();
            let text = std::fs::read_to_string(p)
                .map_err(|e| LoadError::Io { path: origin.clone(), msg: e.to_string() })?;
            SuiteFile::from_json(&text, &origin)
        })
        .collect()
}

fn verify(args: VerifyArgs) -> Result<bool, LoadError> {
    let extra = load_files(&args.files)?;
    let suites = runner::select(runner::catalogue(extra)?, &args.suite)?;
    let opts = Options {
        q_numeric: args.q,
        seed: args.seed,
        order: args.order,
        max_degree: args.max_degree,
        jobs: args.jobs.map(|j| j as usize),
        timings: args.timings,
        ..Options::default()
    };
    let report = runner::run(&suites, &opts);
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| LoadError::Io { path: path.display().to_string(), msg: e.to_string() })?,
        None => print!("{text}"),
    }
    Ok(!report.failed())
}

fn dump(kind: DumpKind, name: &str, files: &[PathBuf]) -> Result<(), LoadError> {
    let text = match kind {
        DumpKind::Preset => runner::dump_preset(name)?,
        DumpKind::Suite => runner::dump_suite(name, load_files(files)?)?,
        DumpKind::Derivation => runner::dump_derivation(name)?,
    };
    print!("{text}");
    if !text.ends_with('\n') {
        println!();
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args).map(|ok| if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }),
        Command::Dump { kind, name, files } => dump(kind, &name, &files).map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
