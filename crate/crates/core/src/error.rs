use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix that must be Hermitian deviates from its adjoint.
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// A matrix that must be positive semidefinite has a negative eigenvalue.
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    /// Two objects that must live on the same space do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A state vector is not normalized (or is empty).
    #[error("state vector is not normalized (norm {norm:.12})")]
    NotNormalized { norm: f64 },

    /// A Bloch vector lies outside the unit ball or a prior is invalid.
    #[error("invalid Bloch observable: {0}")]
    InvalidBloch(String),

    /// Outcome relabeling search is capped at 8 outcomes (8! permutations).
    #[error("too many outcomes for relabeling search: {0} (max 8)")]
    TooManyOutcomes(usize),

    /// Pattern enumeration would exceed the hard count limit.
    #[error("pattern count for n={n}, k={k} exceeds the limit of {limit}")]
    Overflow { n: usize, k: usize, limit: u64 },

    /// A tensor-power space is too large to materialize.
    #[error("total dimension {total} exceeds the limit of {limit}")]
    DimensionOverflow { total: u128, limit: u64 },

    /// The assignment search space is larger than the configured cap.
    #[error("search space of {candidates} candidates exceeds the cap of {cap}")]
    SearchCapExceeded { candidates: u128, cap: u64 },

    /// A direction vector with zero length was supplied where an angle is needed.
    #[error("zero-length direction vector")]
    ZeroVector,

    /// Two directions are collinear where a perpendicular axis is required.
    #[error("directions are collinear; no perpendicular axis exists")]
    CollinearDirections,

    /// Catch-all for structurally invalid input (empty lists and the like).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
