use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("factorization limit exceeded: {n} > {limit}")]
    Overflow { n: u64, limit: u64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("invertibility certificate failed: ||T^-1|| * ||D|| = {bound}")]
    NotInvertible { bound: f64 },

    #[error("degenerate problem: {0}")]
    Degenerate(String),
}
