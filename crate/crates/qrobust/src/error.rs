//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when validating states or running the
/// analyses.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix expected to be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian: max |M - M†| entry = {max_asymmetry:.3e}")]
    NotHermitian { max_asymmetry: f64 },

    /// A matrix expected to be positive semidefinite has a negative
    /// eigenvalue beyond tolerance.
    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    /// A density matrix whose trace is not 1.
    #[error("matrix trace {trace:.12} is not 1 within tolerance")]
    TraceNotOne { trace: f64 },

    /// A pure-state vector whose norm is not 1.
    #[error("state vector norm {norm:.12} is not 1 within tolerance")]
    NotNormalized { norm: f64 },

    /// Mismatched dimensions between an object and the declared party
    /// structure, or between two operands.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A party index set that does not describe a valid partition.
    #[error("bad partition: {0}")]
    BadPartition(String),

    /// An operation that requires exactly two parties.
    #[error("operation requires a bipartite system, got {parties} parties")]
    NotBipartite { parties: usize },

    /// An operation outside the dimension range it is exact for.
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    /// A pure state with a single nonzero Schmidt coefficient has no optimal
    /// pseudomixture: it is already separable.
    #[error("state is a product state; nothing to decompose")]
    ProductState,

    /// A two-qubit analysis that only applies to entangled states.
    #[error("state has a positive partial transpose; it is not entangled")]
    NotEntangled,

    /// The reference state handed to the relative-robustness solver must be
    /// separable.
    #[error("reference state is not separable: min partial-transpose eigenvalue = {min_eigenvalue:.3e}")]
    NotSeparableReference { min_eigenvalue: f64 },

    /// No finite admixture of the reference washes out the entanglement of
    /// the target (the reference misses the negative directions entirely).
    #[error("no finite weight of the reference state makes the target separable")]
    InfeasibleReference,

    /// A lower bound exceeded an upper bound by more than tolerance.
    #[error("inconsistent bounds: lower {lower:.12} > upper {upper:.12}")]
    InconsistentBounds { lower: f64, upper: f64 },

    /// Invalid user-supplied parameter (family parameters, solver or volume
    /// configuration, CLI arguments).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// File I/O failure (CLI).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed JSON input (CLI).
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
