use thiserror::Error;

/// Errors surfaced by the library. Geometric emptiness and oracle
/// "not found" outcomes are values, not errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order Q must be at least 1")]
    InvalidOrder,

    #[error("chain must be nonempty")]
    EmptyChain,

    #[error("chain is too short for this operation (need length >= {0})")]
    ChainTooShort(usize),

    #[error("valence components must be positive")]
    ZeroValence,

    #[error("point ({0}, {1}) lies outside the Farey triangle")]
    PointOutsideTriangle(String, String),

    #[error("invalid rational literal `{0}` (expected `num/den` with positive denominator)")]
    BadRational(String),

    #[error("confirm window must be at least 2")]
    InvalidConfirmWindow,

    #[error("delta(r={r}) did not stabilize within norm cap {cap}")]
    StabilizationBudget { r: usize, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
