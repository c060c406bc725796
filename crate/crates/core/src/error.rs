//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Shapes incompatible with the requested operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A constructor was handed a NaN or infinite entry.
    #[error("matrix entries must be finite")]
    NonFinite,

    /// `hermitian_eig` was called on a matrix that is not Hermitian at the
    /// requested tolerance.
    #[error("matrix is not Hermitian within tolerance (relative deviation {0:.3e})")]
    NotHermitian(f64),

    /// A local operation failed the unitarity check.
    #[error("operator is not unitary within tolerance (max deviation {0:.3e})")]
    NotUnitary(f64),

    /// Inversion requested on a matrix that is rank-deficient at the
    /// requested tolerance.
    #[error("matrix is singular at the requested tolerance")]
    SingularMatrix,

    /// A zero coefficient matrix cannot be scaled into a state.
    #[error("zero matrix cannot be normalized into a state")]
    ZeroState,

    /// State construction without `normalize` requires unit Frobenius norm.
    #[error("coefficient matrix has Frobenius norm {0}, expected 1")]
    Normalization(f64),

    /// A measurement outcome orthogonal to the joint state; the
    /// post-measurement state is undefined.
    #[error("measurement outcome has vanishing overlap with the joint state")]
    ImpossibleOutcome,
}

pub type Result<T> = std::result::Result<T, Error>;
