use thiserror::Error;

/// Errors raised by validation and by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QreeError {
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is not Hermitian: max |M[i][j] - conj(M[j][i])| = {0:.3e}")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1 (tolerance 1e-12)")]
    Trace(f64),
    #[error("matrix is not positive semidefinite: smallest eigenvalue {0:.3e}")]
    NotPositive(f64),
    #[error("pure state is not normalized: squared norm {0}")]
    NotNormalized(f64),
    #[error("argument {0} outside the domain [0, 1]")]
    Domain(f64),
    #[error("state is separable: {0}")]
    Separable(String),
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
    #[error("no boundary crossing: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, QreeError>;
