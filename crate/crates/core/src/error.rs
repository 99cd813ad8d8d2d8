use thiserror::Error;

/// Errors surfaced by the engine.
///
/// `ZeroModule` is a first-class signal rather than a failure: callers that
/// pad a partition below the threshold `n < |lambda| + lambda_1` are told the
/// module vanishes and can branch on it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("the Specht module for lambda={lambda:?} padded to n={n} is zero (n < |lambda| + lambda_1 = {threshold})")]
    ZeroModule {
        lambda: Vec<usize>,
        n: usize,
        threshold: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: needs {needed} subset scans, budget is {budget}; {hint}")]
    BudgetExceeded {
        needed: u128,
        budget: u64,
        hint: String,
    },

    #[error("store format error: {0}")]
    StoreFormat(String),

    #[error("store headers are incompatible: {0}")]
    HeaderMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True when the error is the zero-module signal.
    pub fn is_zero_module(&self) -> bool {
        matches!(self, Error::ZeroModule { .. })
    }
}
