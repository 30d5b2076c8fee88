//! `citent`: batch analysis of change between two yearly snapshots of an
//! aggregated journal-journal citation network.
//!
//! Subcommands: `stats`, `diff`, `rank`, `categories`, `env`, `synth`.
//! Exit codes: 0 success, 1 data or runtime error, 2 usage error.

mod commands;
mod manifest;
mod output;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "citent",
    version,
    about = "Entropy-based change statistics for journal citation networks",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summary counts of one snapshot file (JSON on stdout).
    Stats {
        /// Snapshot CSV (`citing,cited,count`).
        file: PathBuf,
    },
    /// File-level and per-journal change report (JSON + CSV).
    Diff(DiffArgs),
    /// Ranked per-journal change tables (vector, normalized, matrix-term).
    Rank(DiffArgs),
    /// Aggregate per-journal change into macro-journals.
    Categories(CategoriesArgs),
    /// Delineate a seed journal's citation environment in both years and
    /// emit factor tables plus 2-D maps.
    Env(EnvArgs),
    /// Generate a synthetic two-year snapshot pair with ground truth.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Cited,
    Citing,
}

impl From<AxisArg> for citent_core::Axis {
    fn from(axis: AxisArg) -> Self {
        match axis {
            AxisArg::Cited => citent_core::Axis::Cited,
            AxisArg::Citing => citent_core::Axis::Citing,
        }
    }
}

#[derive(Debug, Args)]
struct CommonInputs {
    /// Prior-year snapshot CSV.
    prior: PathBuf,
    /// Posterior-year snapshot CSV.
    posterior: PathBuf,
    /// Name-change CSV `old,new,kind`; renames are applied to the prior
    /// year, merge/split records are skipped with a warning.
    #[arg(long)]
    changes: Option<PathBuf>,
    /// Keep single-citation relations instead of filtering them out.
    #[arg(long)]
    keep_singles: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DiffArgs {
    #[command(flatten)]
    inputs: CommonInputs,
    /// Matrix dimension to analyze.
    #[arg(long, value_enum, default_value_t = AxisArg::Cited)]
    axis: AxisArg,
}

#[derive(Debug, Args)]
struct CategoriesArgs {
    #[command(flatten)]
    inputs: CommonInputs,
    /// Category CSV `journal,category` (many-to-many).
    #[arg(long)]
    scheme: PathBuf,
    #[arg(long, value_enum, default_value_t = AxisArg::Cited)]
    axis: AxisArg,
}

#[derive(Debug, Args)]
struct EnvArgs {
    #[command(flatten)]
    inputs: CommonInputs,
    /// Seed journal id.
    #[arg(long)]
    seed: String,
    /// Environment threshold, percent of the seed's totals.
    #[arg(long, default_value_t = 1.0)]
    threshold: f64,
    /// Also analyze a zoomed environment at this threshold (defaults to 2%).
    #[arg(long, num_args = 0..=1, default_missing_value = "2.0")]
    zoom: Option<f64>,
    #[arg(long, value_enum, default_value_t = AxisArg::Cited)]
    axis: AxisArg,
    /// Skip the varimax rotation of retained factors.
    #[arg(long)]
    no_rotate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    /// Stable pair, no events.
    Null,
    /// Five journals branch into a new cluster.
    Emergent,
    /// Preferential growth of already-leading journals.
    Matthew,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Generator config JSON; overrides --preset.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in scenario.
    #[arg(long, value_enum, default_value_t = PresetArg::Emergent)]
    preset: PresetArg,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = match cli.command {
        Command::Stats { file } => commands::stats(&file),
        Command::Diff(args) => commands::diff(&args, &argv),
        Command::Rank(args) => commands::rank(&args, &argv),
        Command::Categories(args) => commands::categories(&args, &argv),
        Command::Env(args) => commands::env(&args, &argv),
        Command::Synth(args) => commands::synth(&args, &argv),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("citent: {error}");
            ExitCode::from(1)
        }
    }
}
