use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix is singular for n = {n}, b = {b}, btilde = {b_tilde}")]
    Singular { n: usize, b: i32, b_tilde: f64 },

    #[error("index ({i}, {j}) out of range for order {n} (indices are 1-based)")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("pivot breakdown at elimination step {step} (|pivot| = {pivot:e})")]
    PivotBreakdown { step: usize, pivot: f64 },

    #[error("fixed-point iteration diverged after {iterations} iterations")]
    Divergence {
        iterations: usize,
        /// Successive-difference norms up to the point of failure.
        diffs: Vec<f64>,
    },

    #[error("a finite iterate range is required for the Lipschitz constant of {0}")]
    UnboundedRange(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
