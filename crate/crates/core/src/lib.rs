//! Exact spin elimination for k-local Ising Hamiltonians.
//!
//! A Hamiltonian is a [`Polynomial`] in spins `s_i ∈ {±1}` with exact
//! rational coefficients. Eliminating `s_a` splits `H = s_a·P + rest` and
//! replaces it by `rest − |P|`, expanded back into a multilinear polynomial;
//! the minimum over the remaining spins is unchanged and `s_a = −sgn(P)`
//! recovers the eliminated value.

pub mod eliminate;
pub mod expand;
pub mod gadgets;
pub mod poly;
pub mod problems;
pub mod solve;
pub mod text;

pub use eliminate::{
    back_substitute, eliminate_spin, extract_local_block, full_solve, full_solve_with_order,
    reduce, spectrum, EliminationError, EliminationOrder, EliminationRecord, Reduction,
    ReductionLimits, Solution, Trace,
};
pub use expand::{direct_expand, expand_neg_abs, fwht, symmetric_coeffs, ExpandError, ValueTable};
pub use gadgets::{apply_gadget, GadgetKind};
pub use poly::{
    canonicalize_monomial, Monomial, PolyError, Polynomial, Rational, Spin, SpinAssignment,
    SpinIndex,
};
pub use solve::{
    brute_force, hopfield_descent, run_trials, DescentParams, SolveError, TrialHistogram,
};
