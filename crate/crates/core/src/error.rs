use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported filter: {family} of order {order}")]
    UnsupportedFilter { family: String, order: usize },

    #[error("filter coefficients must be nonempty")]
    EmptyFilter,

    #[error("invalid wavelet: {0}")]
    InvalidWavelet(String),

    #[error("wavelet has (numerically) zero energy")]
    DegenerateWavelet,

    #[error("invalid scales: {0}")]
    InvalidScales(String),

    #[error("series too short: need at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("length {len} is not divisible by 2^{depth}")]
    LengthNotDivisible { len: usize, depth: usize },

    #[error("decomposition depth must be at least 1")]
    InvalidDepth,

    #[error("coefficients were computed with {expected}, not {found}")]
    FilterMismatch { expected: String, found: String },

    #[error("inconsistent coefficients: {0}")]
    InconsistentCoefficients(String),

    #[error("degenerate regression design")]
    DegenerateDesign,

    #[error("target length {target} exceeds series length {len}")]
    TargetTooLarge { target: usize, len: usize },

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error(
        "insufficient data at level {level}: {available} nonboundary coefficients, need {required}"
    )]
    InsufficientData {
        level: usize,
        available: usize,
        required: usize,
    },

    #[error("coefficients have zero energy")]
    ZeroEnergy,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("input not found: {}", .0.display())]
    InputNotFound(PathBuf),

    #[error("parse error at row {row}, field `{field}`: {message}")]
    Parse {
        row: usize,
        field: String,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
