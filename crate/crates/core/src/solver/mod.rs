//! Exact solvers used as oracles throughout the crate.

pub mod exact;
pub mod polynomial;

pub use exact::{
    acyclic_dichromatic_number, chromatic_number, decide, dichromatic_number, is_acyclic_k_dicolourable, is_k_critical,
    is_k_dicolourable, Decision, LowerBoundProof, Mode, SolveOptions, SolveOutcome, SolveResult,
};
pub use polynomial::{chromatic_polynomial, count_acyclic_orientations, enumerate_acyclic_orientations, Polynomial};
