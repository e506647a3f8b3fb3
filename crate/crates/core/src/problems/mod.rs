//! Hamiltonian builders for the application families.

pub mod adder;
pub mod factor;
pub mod graph;
pub mod hopfield;
pub mod maxcut;
pub mod mobius;

use thiserror::Error;

use crate::eliminate::EliminationError;
use crate::poly::Polynomial;
use crate::solve::SolveError;

pub use adder::adder_hamiltonian;
pub use factor::factor_preset;
pub use graph::Graph;
pub use hopfield::{
    dense_hebbian, hebbian_couplings, retrieval_experiment, PatternSet, RetrievalReport,
};
pub use maxcut::{
    cut_value, maxcut_hamiltonian, maxcut_reduce_2local, maxcut_reduce_klocal, maxcut_statistics,
    mean_removed_fraction, random_cubic_graph, solve_reduced, MaxcutReduction, MaxcutStats,
    Strategy,
};
pub use mobius::{critical_j_scan, mobius_ladder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph line {line}: {message}")]
    GraphParse { line: usize, message: String },
    #[error("statistics line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("graph is not cubic")]
    NotCubic,
    #[error("pattern set is empty")]
    EmptyPatterns,
    #[error("invalid patterns: {0}")]
    InvalidPatterns(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid J grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Elimination(#[from] EliminationError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// The five-spin cubic example used to walk through a full solve.
pub fn worked_example() -> Polynomial {
    Polynomial::from_int_terms(&[
        (1, &[1, 2]),
        (2, &[1, 3, 4]),
        (-1, &[1, 4, 5]),
        (3, &[2, 3, 4]),
        (-1, &[3, 4, 5]),
        (2, &[2, 4, 5]),
        (-1, &[3, 5]),
        (3, &[4, 5]),
        (1, &[2, 3]),
        (2, &[3, 4]),
        (1, &[1, 5]),
    ])
}

/// Every bundled Hamiltonian by name.
pub const PRESET_NAMES: [&str; 5] = [
    "n291311_3",
    "n291311_binary",
    "bit48_10",
    "adder",
    "worked_example",
];

/// Bundled Hamiltonians: the factorization presets plus `adder` and `worked_example`.
pub fn preset(name: &str) -> Result<Polynomial, ProblemError> {
    match name {
        "adder" => Ok(adder_hamiltonian()),
        "worked_example" => Ok(worked_example()),
        other => factor_preset(other),
    }
}
