use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("value is not finite")]
    NonFinite,

    #[error("{n} inputs outside the supported range 1..={max}", max = crate::table::MAX_INPUTS)]
    UnsupportedInputCount { n: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate input combination at row {index}")]
    DuplicateRow { index: usize },

    #[error("incomplete truth table: expected {expected} rows, got {actual}")]
    IncompleteTable { expected: usize, actual: usize },

    #[error("degenerate unit: all weights and the threshold are zero")]
    DegenerateUnit,

    #[error("system has {n_vars} unknowns, above the elimination budget of {max}")]
    CapacityExceeded { n_vars: usize, max: usize },

    #[error("constraint index {index} out of range ({len} constraints)")]
    ConstraintIndex { index: usize, len: usize },

    #[error("correction must be nonnegative, got {0}")]
    NegativeCorrection(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("network needs at least an input and an output layer")]
    EmptyArchitecture,

    #[error("model file, line {line}: {msg}")]
    ModelFormat { line: usize, msg: String },

    #[error("bitmap: {0}")]
    PbmFormat(String),
}
