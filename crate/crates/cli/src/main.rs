mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "positroid",
    version,
    about = "Positroid combinatorics, plabic graphs and cluster seeds"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Largest n for which positroids are enumerated eagerly.
    #[arg(long, global = true, default_value_t = 12)]
    pub n_cap: usize,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Spec {
    /// Decorated permutation: cycle notation such as "(135)(264)", "id:+,-",
    /// "uniform:3,6", or the JSON object form.
    pub permutation: String,
    /// Size of the ground set, when cycle notation leaves it implicit.
    #[arg(short, long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Grassmann necklace and positroid summary.
    Necklace(Spec),
    /// Rank-one module flags for every k-set.
    Positroid {
        #[command(flatten)]
        spec: Spec,
        /// Also list every maximal non-crossing collection.
        #[arg(long)]
        collections: bool,
    },
    /// Bridge-decomposition plabic graph, face labels and quiver.
    Plabic {
        #[command(flatten)]
        spec: Spec,
        /// With --format dot, draw the quiver instead of the graph.
        #[arg(long)]
        quiver: bool,
    },
    /// Mutation class of the initial seed.
    Seeds {
        #[command(flatten)]
        spec: Spec,
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Exact identity verification at cell and generic points.
    Verify {
        #[command(flatten)]
        spec: Spec,
        /// Number of cell points and of generic points.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
        /// Corrupt one cluster variable before verifying.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// A point of the totally nonnegative cell.
    Sample(Spec),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.config;
    let outcome = match &cli.command {
        Command::Necklace(spec) => commands::necklace(c, spec),
        Command::Positroid { spec, collections } => commands::positroid(c, spec, *collections),
        Command::Plabic { spec, quiver } => commands::plabic(c, spec, *quiver),
        Command::Seeds { spec, limit } => commands::seeds(c, spec, *limit),
        Command::Verify {
            spec,
            points,
            limit,
            inject_fault,
        } => commands::verify(c, spec, *points, *limit, *inject_fault),
        Command::Sample(spec) => commands::sample(c, spec),
    };
    match outcome.and_then(|out| commands::emit(c, &out.text).map(|_| out.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
