use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FouError {
    #[error("Hurst parameter {0} outside [0.5, 1)")]
    InvalidHurst(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// Two decay rates are too close for the distinct-rate closed form.
    #[error("decay rates {a} and {b} are closer than the distinctness guard")]
    DegenerateLambdas { a: f64, b: f64 },

    #[error("covariance factorization failed after jitter {jitter:e}")]
    FactorizationFailure { jitter: f64 },

    #[error("singular covariance in prediction (jitter {jitter:e})")]
    SingularCovariance { jitter: f64 },

    #[error("quadrature did not converge: estimate {value}, error {abs_err:e}")]
    Quadrature { value: f64, abs_err: f64 },

    #[error("series has zero variance")]
    DegenerateSeries,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("optimizer made no progress: every restart returned the penalty value")]
    NoProgress,

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, FouError>;
