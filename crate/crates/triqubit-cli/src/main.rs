//! Command-line frontend: state and basis file inspection, bound-state
//! construction, local-unitary orbits, and the claim-by-claim verification
//! run. Each command writes one JSON report to stdout; `--pretty` adds a
//! human-readable table on stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use triqubit_cli::commands;

#[derive(Parser)]
#[command(name = "triqubit", version, about = "Three-qubit entanglement toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tangle profile, hyperdeterminant, and separability of a state file
    Tangles {
        /// Path to a triqubit-state/1 JSON file
        file: PathBuf,
        /// Rescale input amplitudes to unit norm instead of rejecting them
        #[arg(long)]
        normalize: bool,
        /// Also print a human-readable table to stderr
        #[arg(long)]
        pretty: bool,
    },
    /// Orthonormality, classification, and optional certification of a basis file
    CheckBasis {
        /// Path to a triqubit-basis/1 JSON file
        file: PathBuf,
        /// Run the see-saw search: unextendibility for product sets,
        /// product-freeness for entangled sets
        #[arg(long)]
        certify: bool,
        /// Rescale input amplitudes to unit norm instead of rejecting them
        #[arg(long)]
        normalize: bool,
        /// Seed for the search restarts
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of see-saw restarts
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        /// Per-sweep improvement threshold for convergence
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Also print a human-readable table to stderr
        #[arg(long)]
        pretty: bool,
    },
    /// Build the uniform mixture over the entangled basis and certify it
    BoundState {
        /// Use the dual (bit-flipped) basis family
        #[arg(long)]
        dual: bool,
        /// Write the matrix to this path as triqubit-matrix/1 JSON
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
        /// Seed for the range-criterion search
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of see-saw restarts
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        /// Per-sweep improvement threshold for convergence
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Also print a human-readable table to stderr
        #[arg(long)]
        pretty: bool,
    },
    /// Sample random local-unitary images of the canonical basis family
    LuOrbit {
        /// Base seed; sample k uses seed + k
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of samples (at least 1)
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        count: u32,
        /// Also print a human-readable table to stderr
        #[arg(long)]
        pretty: bool,
    },
    /// Recompute every published numeric claim; exit 1 on any FAIL row
    VerifyPaper {
        /// Seed for the certification searches
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of see-saw restarts
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        /// Also print the claim table to stderr
        #[arg(long)]
        pretty: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Tangles {
            file,
            normalize,
            pretty,
        } => commands::tangles::run(&file, normalize, pretty),
        Command::CheckBasis {
            file,
            certify,
            normalize,
            seed,
            restarts,
            tol,
            pretty,
        } => commands::check_basis::run(&file, certify, normalize, seed, restarts, tol, pretty),
        Command::BoundState {
            dual,
            export,
            seed,
            restarts,
            tol,
            pretty,
        } => commands::bound_state::run(dual, export.as_deref(), seed, restarts, tol, pretty),
        Command::LuOrbit { seed, count, pretty } => {
            commands::lu_orbit::run(seed, count as usize, pretty)
        }
        Command::VerifyPaper {
            seed,
            restarts,
            pretty,
        } => commands::verify_paper::run(seed, restarts, pretty),
    };
    ExitCode::from(code)
}
