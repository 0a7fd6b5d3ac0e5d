use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chaincore::report::Report;
use chaincore::runner::{
    self, RunConfig, DEFAULT_CAP, DEFAULT_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "chaincore",
    about = "Fusion, branching, and chain-group verification for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct CommonArgs {
    /// Group spec: presets like S4, Q8, SL23, products like C2xC4, or
    /// perm:[(0 1),(0 1 2)]
    #[arg(long)]
    group: Option<String>,
    /// Subgroup spec: center, derived, trivial, full, or gen:[...]
    #[arg(long)]
    subgroup: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Coset enumeration limit
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
    /// Group order cap
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Prime override (must be 1 mod the exponent and exceed the order)
    #[arg(long)]
    prime: Option<u64>,
    /// Accept non-commutative fusion rings
    #[arg(long)]
    allow_noncommutative: bool,
    /// Manifest of group specs, one per line
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Run even when a precondition check (normality) fails
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify the chain-group / relative-center isomorphism for one pair
    Chain(CommonArgs),
    /// Verify the restriction/constituent partition duality
    Clifford(CommonArgs),
    /// Validate a fusion file and compute its chain group
    Fusion {
        /// Path to a .fusion.json file
        path: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep a corpus of groups through every verification
    Corpus(CommonArgs),
    /// Inspect a group: order, classes, degrees, center
    Group(CommonArgs),
}

fn to_config(common: &CommonArgs, fusion_path: Option<PathBuf>) -> RunConfig {
    RunConfig {
        group: common.group.clone(),
        subgroup: common.subgroup.clone(),
        prime: common.prime,
        limit: common.limit,
        cap: common.cap,
        manifest: common.manifest.clone(),
        fusion_path,
        allow_noncommutative: common.allow_noncommutative,
        force: common.force,
        workers: None,
    }
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::Chain(c) => (runner::run_chaingroup(&to_config(c, None)), c.format),
        Command::Clifford(c) => (runner::run_clifford(&to_config(c, None)), c.format),
        Command::Fusion { path, common } => (
            runner::run_fusion(&to_config(common, Some(path.clone()))),
            common.format,
        ),
        Command::Corpus(c) => (runner::run_corpus(&to_config(c, None)), c.format),
        Command::Group(c) => (runner::run_group(&to_config(c, None)), c.format),
    };
    match result {
        Ok(report) => emit(&report, format),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
