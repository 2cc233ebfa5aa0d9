use thiserror::Error;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(&'static str),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial must have degree at least {0}")]
    DegreeTooLow(usize),

    #[error("Laguerre parameter must satisfy alpha > -1, got {0}")]
    InvalidAlpha(String),

    #[error("exact mode requires a nonnegative integer alpha, got {0}")]
    ExactAlphaRequired(String),

    #[error("moment m_{required} is required but only m_0..m_{available} were supplied")]
    InsufficientMoments { required: usize, available: usize },

    #[error("Gram matrix is not positive definite (leading minor {0} is not positive)")]
    NotPositiveDefinite(usize),

    #[error("singular linear system: {0}")]
    Singular(&'static str),

    #[error("invalid mass term: {0}")]
    InvalidMass(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("point {0} lies on the cut [0, inf)")]
    OnCut(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inner product is not sequentially ordered (first violation at k={0})")]
    NotSequentiallyOrdered(usize),

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        best: Vec<num_complex::Complex64>,
    },

    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
