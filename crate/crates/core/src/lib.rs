//! Coefficient-matrix toolkit for pure bipartite quantum states.
//!
//! A pure bipartite state |ψ⟩ = Σ a_ij |i⟩₁|j⟩₂ is represented by its
//! coefficient matrix A. In this form entanglement analysis and the standard
//! two-pair protocols reduce to small-matrix algebra:
//!
//! - Schmidt weights are the eigenvalues of AA†, the Schmidt number is the
//!   rank of A, and the full decomposition is the SVD of A ([`state`]).
//! - An entanglement swap of pairs A, C through the measured outcome B
//!   produces F = A B̄ C / ρ with probability ρ²; chains fold the product
//!   ([`protocols`]).
//! - Bipartite teleportation through two resource pairs yields the
//!   receiver's correction operator from the inverse of the channel matrix
//!   ([`protocols::teleport_bipartite`]).
//!
//! Every shortcut is cross-checked against [`oracle`], a deliberately naive
//! full-state-vector simulator that shares no code with the matrix forms.

pub mod error;
pub mod matrix;
pub mod oracle;
pub mod protocols;
pub mod report;
pub mod state;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianEig, Svd};
pub use oracle::MultiPartyState;
pub use protocols::{
    correction_state_independence_check, entanglement_swap, swap_chain, teleport_bipartite,
    MeasurementOutcome, SwapResult, TeleportPlan,
};
pub use state::{PureBipartiteState, SchmidtDecomposition};
