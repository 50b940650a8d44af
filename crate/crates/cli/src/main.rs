//! `greechie`: command-line front end for orthogonality diagrams.
//!
//! Exit status: 0 on success, 1 on a domain error (a JSON object on
//! stderr), 2 on a usage error.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "greechie",
    version,
    about = "Orthogonality diagrams, two-valued states and their probability types"
)]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct SearchArgs {
    /// Cap on search nodes for state enumeration.
    #[arg(long, default_value_t = greechie::states::DEFAULT_MAX_NODES)]
    pub max_nodes: u64,
    /// Enumerate branches of the first context in parallel.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Enumerate two-valued states.
    States {
        diagram: PathBuf,
        /// Print only the number of states.
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Reconstruct the partition logic from the two-valued states.
    Partition {
        diagram: PathBuf,
        /// Partition-logic JSON to compare against up to relabelling of the
        /// ground set; a mismatch is an error.
        #[arg(long)]
        expect: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Classical maximum of a functional and, given a representation, its
    /// quantum value.
    Bound {
        diagram: PathBuf,
        functional: PathBuf,
        /// Vector representation JSON.
        #[arg(long, conflicts_with = "umbrella")]
        rep: Option<PathBuf>,
        /// Use the completed pentagon umbrella as the representation.
        #[arg(long)]
        umbrella: bool,
        /// Comma-separated unit state vector (default: first basis vector).
        #[arg(long, allow_hyphen_values = true)]
        state: Option<String>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check diagram well-formedness.
    Validate { diagram: PathBuf },
    /// Do the two-valued states separate every pair of atoms?
    Separable {
        diagram: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Facets of the classical polytope.
    Facets {
        diagram: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Atoms that are true in every state in which the target is true.
    Implies {
        diagram: PathBuf,
        atom: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Nonnegativity and context sums of a rational weight.
    CheckWeight { diagram: PathBuf, weight: PathBuf },
    /// Is a weight a convex combination of two-valued states?
    HullMember {
        diagram: PathBuf,
        weight: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Umbrella vectors on the pentagon, completed to a representation.
    Umbrella {
        /// Pentagon-shaped diagram (default: the bundled pentagon).
        diagram: Option<PathBuf>,
    },
    /// Check a vector representation for faithfulness.
    CheckRep {
        diagram: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Partitions of ball types induced by each color, and the diagram they
    /// paste to.
    UrnPartition {
        urn: PathBuf,
        #[arg(long)]
        color: Option<String>,
    },
    /// Run the two-agent urn experiment.
    UrnRun {
        urn: PathBuf,
        #[command(flatten)]
        exp: ExperimentArgs,
    },
    /// Exact and sampled CHSH combination for a binary urn.
    UrnChsh {
        urn: PathBuf,
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Setting pair carrying the minus sign.
        #[arg(long, default_value = "blue-green")]
        variant: String,
    },
    /// Bell number B_n.
    Bell { n: u32 },
}

#[derive(Args)]
pub struct ExperimentArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub draws: usize,
    /// `uniform`, `round-robin`, or `fixed:<alice color>,<bob color>`.
    #[arg(long, default_value = "uniform")]
    pub protocol: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
