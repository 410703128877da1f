//! `citeimpact`: command-line front end.
//!
//! Data goes to stdout (or `--out`), diagnostics to stderr.
//! Exit codes: 0 success, 2 I/O, 3 parse, 4 usage.

mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "citeimpact", version, about = "Citation impact indicators for citation networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute indicator records for every publication with CP >= min-cp
    Compute(ComputeArgs),
    /// Mean/median summaries per group and indicator
    Stats(StatsArgs),
    /// Cumulative distribution of one indicator
    Cdf(CdfArgs),
    /// Top-n publications by one indicator
    Rank(RankArgs),
    /// Histogram of per-citer counts for one focal publication
    Dist(DistArgs),
    /// Pairs of indicator values per publication
    Scatter(ScatterArgs),
    /// Generate a synthetic citation network
    Synth(SynthArgs),
    /// Load a network and report validation tallies only
    Validate(GraphArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge list (`citing<TAB>cited`); `-` reads stdin
    #[arg(long, value_name = "PATH", default_value = "-")]
    edges: String,
    /// Metadata TSV (`id year group doctype`)
    #[arg(long, value_name = "PATH")]
    meta: Option<String>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_name = "csv|json", default_value = "csv")]
    format: String,
    /// Output file; stdout when absent
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Debug, Args)]
struct BatchArgs {
    /// Minimum citation count of the publications to include
    #[arg(long, value_name = "N", default_value_t = 100)]
    min_cp: u64,
    /// Worker threads; all cores when absent
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

/// Records come either from a computed indicator CSV or from an edge list.
#[derive(Debug, Args)]
struct RecordSource {
    /// Previously computed indicator CSV
    #[arg(long, value_name = "PATH", conflicts_with = "edges")]
    indicators: Option<String>,
    /// Edge list to compute records from
    #[arg(long, value_name = "PATH")]
    edges: Option<String>,
    /// Metadata TSV providing group labels
    #[arg(long, value_name = "PATH")]
    meta: Option<String>,
    #[command(flatten)]
    batch: BatchArgs,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    batch: BatchArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    source: RecordSource,
    /// Indicators to summarise (repeatable or comma separated); all when absent
    #[arg(long = "indicator", value_name = "NAME", value_delimiter = ',')]
    indicator_names: Vec<String>,
    /// Add one column per group label besides ALL
    #[arg(long)]
    group_by: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CdfArgs {
    #[command(flatten)]
    source: RecordSource,
    #[arg(long, value_name = "NAME", default_value = "cp")]
    indicator: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[command(flatten)]
    source: RecordSource,
    #[arg(long, value_name = "INDICATOR", default_value = "cp")]
    by: String,
    #[arg(long, value_name = "N", default_value_t = 10)]
    top: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Token of the focal publication
    #[arg(long, value_name = "TOKEN")]
    focal: String,
    #[arg(long, value_name = "r_citing|r_cited", default_value = "r_citing")]
    side: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ScatterArgs {
    #[command(flatten)]
    source: RecordSource,
    #[arg(long, value_name = "INDICATOR", default_value = "pcp_rciting_gt0")]
    x: String,
    #[arg(long, value_name = "INDICATOR", default_value = "pcp_rcited_gt0")]
    y: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Number of publications
    #[arg(long, value_name = "N", default_value_t = 1000)]
    n: usize,
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "X", default_value_t = 20.0)]
    refs_mean: f64,
    /// Preferential attachment exponent
    #[arg(long, value_name = "X", default_value_t = 1.0)]
    exponent: f64,
    #[arg(long, value_name = "N", default_value_t = 1)]
    groups: usize,
    /// Edge list output; stdout when absent
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Metadata output
    #[arg(long, value_name = "PATH")]
    meta: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Stats(a) => commands::stats(a),
        Command::Cdf(a) => commands::cdf(a),
        Command::Rank(a) => commands::rank(a),
        Command::Dist(a) => commands::dist(a),
        Command::Scatter(a) => commands::scatter(a),
        Command::Synth(a) => commands::synth(a),
        Command::Validate(a) => commands::validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("citeimpact: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
