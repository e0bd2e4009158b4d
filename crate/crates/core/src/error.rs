use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("training targets contain a non-finite value at index {index}")]
    NonFiniteTarget { index: usize },

    #[error("need at least {required} training points, got {got}")]
    TooFewPoints { required: usize, got: usize },

    #[error("Cholesky factorization failed (jitter {jitter:e})")]
    Cholesky { jitter: f64 },

    #[error("unknown function id `{0}` (expected one of f1|f5|f7|f8|f12|f15|f16|f21|f23|f24)")]
    UnknownFunction(String),

    #[error("unknown schedule `{0}` (expected one of ei|pi|random|round_robin|ee25|ee50|ee75)")]
    UnknownSchedule(String),

    #[error("step {step} is out of range 1..={total}")]
    StepOutOfRange { step: usize, total: usize },

    #[error("point coordinate {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfDomain {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input data: {0}")]
    InvalidData(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {source}")]
    Json {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
