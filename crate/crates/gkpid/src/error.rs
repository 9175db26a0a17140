use thiserror::Error;

/// Error type for distribution construction and measure evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("outcome arity mismatch: expected {expected} state labels, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("negative probability {prob} in row {row}")]
    NegativeProbability { prob: f64, row: usize },

    #[error("distribution has no positive probability mass")]
    EmptySupport,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{label}` covers {var_rows} support rows, distribution has {dist_rows}")]
    SupportMismatch {
        label: String,
        var_rows: usize,
        dist_rows: usize,
    },

    #[error("variable list must not be empty")]
    EmptyVariableList,

    #[error("block {block} out of range for `{label}` ({count} blocks)")]
    BlockOutOfRange {
        label: String,
        block: usize,
        count: usize,
    },

    #[error("inclusion-exclusion supports at most 16 predictors, got {0}")]
    TooManyPredictors(usize),

    #[error("property {property} requires {needs}")]
    InstanceShape {
        property: &'static str,
        needs: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
