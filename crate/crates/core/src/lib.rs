//! # bellpair-core
//!
//! Two-qubit non-separability relative to a chosen partition of the
//! observable algebra rather than a fixed tensor-product split.
//!
//! - [`algebra`]: 4×4 complex matrices, Pauli/Kronecker generators `λ₁..λ₁₅`,
//!   decomposition and span rank.
//! - [`states`]: pure and mixed state functionals and the named state families.
//! - [`bellpair`]: Bell pairs of subalgebras, validation, presets, transport.
//! - [`correlation`]: correlation matrices, total correlation as the spectral
//!   norm, concurrence, a sampling oracle.
//! - [`separability`]: restriction Bloch vectors, classification and solvers
//!   for separable and maximally correlated states.
//! - [`transport`]: a Bell pair realizing any prescribed total correlation.
//! - [`io`]: JSON formats; [`oracle`]: seeded self-checks.

#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bellpair;
pub mod correlation;
pub mod error;
pub mod io;
pub mod oracle;
#[cfg(test)]
mod properties;
pub mod search;
pub mod separability;
pub mod states;
pub mod symmetric3;
pub mod transport;

pub use algebra::{
    anticommutator, commutator, decompose, kron, lambda, pauli, rank_of_span, Coefficients,
    ComplexScalar, GeneratorTable, Matrix2, Matrix4, Unitary4,
};
pub use bellpair::{
    canonical_pair, paper_pair_ab, paper_pair_prime, transported_pair, validate, BellPair,
    PairCandidate, Preset, SubalgebraTriple, ValidationReport,
};
pub use correlation::{
    brute_force_correlation, concurrence, concurrence_closed_form, correlation_matrix,
    observable_correlation, spectral_norm, top_singular_pair, total_correlation, CorrelationMatrix,
    ObservablePair,
};
pub use error::{Error, Result};
pub use separability::{
    analyze, classify, find_maximally_correlated, find_separable, restrict, BlochRestriction,
    Classification, ClassificationKind, CorrelationReport, SolverOutcome, Thresholds,
};
pub use states::{
    abmax_state, maxent_state, phi_state, random_pure, random_pure_with, w_vector, ABMaxParams,
    MaxEntParams, MixedState, PhiParams, PureState, State, StateFunctional, WVector,
};
pub use transport::{
    random_unitary, realize_correlation, rotate_state, unitary_from_states, Completion,
};
