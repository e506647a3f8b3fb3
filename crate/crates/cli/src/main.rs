//! `spinel`: reduce, solve and back-map Ising Hamiltonians, and run the
//! bundled experiments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact spin elimination for k-local Ising Hamiltonians.
#[derive(Debug, Parser)]
#[command(name = "spinel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Largest neighborhood expanded by the transform.
    #[arg(long, env = "SPINEL_NEIGHBORHOOD_CAP", default_value_t = spinel_core::expand::DEFAULT_NEIGHBORHOOD_CAP)]
    max_neighborhood: usize,
    /// Refuse eliminations that create terms of higher order.
    #[arg(long)]
    max_locality: Option<usize>,
    /// Refuse eliminations that give any spin more distinct neighbors.
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Enumerate every configuration.
    Brute,
    /// Eliminate every spin, then back-substitute.
    Eliminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    #[value(name = "2local")]
    TwoLocal,
    #[value(name = "klocal")]
    KLocal,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eliminate spins and write the reduced Hamiltonian and its trace.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// `greedy`, `ascending`, or a comma-separated list of spins.
        #[arg(long, default_value = "")]
        order: String,
        /// Spins left by the greedy order.
        #[arg(long, default_value_t = 0)]
        keep: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print the minimum energy and every ground state.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Spins eliminated first with `--method eliminate`.
        #[arg(long, default_value = "")]
        order: String,
    },
    /// Complete reduced solutions through a trace.
    Backmap {
        #[arg(long)]
        trace: PathBuf,
        /// Reduced state such as `s2=+1 s3=+1`.
        #[arg(long, conflicts_with = "input")]
        assign: Option<String>,
        /// Reduced Hamiltonian; all of its ground states are completed.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Decode states of the 291311 presets into factors.
        #[arg(long)]
        decode: bool,
    },
    /// Write the energy/multiplicity CSV of all configurations.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce random cubic Max-Cut instances and report statistics.
    Maxcut {
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        runs: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::TwoLocal)]
        strategy: StrategyArg,
        /// Rounds of the higher-order strategy.
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        /// First seed; run `k` uses `seed + k`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph file to reduce instead of generating graphs.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Check the back-mapped cut against enumeration (N ≤ 20).
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Build the Möbius ladder or scan J for the ground-state switch.
    Mobius {
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Write the ladder at this J instead of scanning.
        #[arg(long)]
        j: Option<String>,
        /// Comma-separated ascending J values.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the Hopfield retrieval experiment before and after elimination.
    Hopfield {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        p: usize,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Spins eliminated from each block.
        #[arg(long, default_value_t = 1)]
        per_block: usize,
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// Histogram before elimination.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Histogram after elimination.
        #[arg(long)]
        post_output: Option<PathBuf>,
        /// Write the network Hamiltonian instead of running trials.
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
    },
    /// List or write the bundled Hamiltonians.
    Presets {
        #[arg(long)]
        name: Option<String>,
        /// File, or directory when `--name all`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                commands::EXIT_PARSE
            } else {
                0
            });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
