use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1 (got {0})")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} entries for a square matrix, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("matrix is not Hermitian: |m[{row}][{col}] - conj(m[{col}][{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("function is undefined at eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not unitary (||U^dag U - 1||_F = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("vector is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("Kraus operators are not trace preserving (||sum K^dag K - 1||_F = {deviation:e})")]
    InvalidKraus { deviation: f64 },

    #[error("state is pure (S = {entropy:e} bits); no selective violation exists")]
    StatePure { entropy: f64 },

    #[error("simplex search did not converge within {evaluations} evaluations")]
    OptimizerFailure { evaluations: usize },

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
}

pub type Result<T> = std::result::Result<T, Error>;
