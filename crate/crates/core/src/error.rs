use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the routine (poles, NaN, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation point outside the region where the method is valid.
    #[error("out of region: {0}")]
    OutOfRegion(String),

    #[error("pole at s = 1")]
    Pole,

    /// A stated hypothesis failed; `max_t` carries the largest admissible
    /// height when the failing condition is a height bound.
    #[error("precondition violated: {message}")]
    Precondition { message: String, max_t: Option<f64> },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("non-finite evaluation at x = {x}")]
    Evaluation { x: f64 },

    /// Quadrature could not reach its target within the panel budget.
    /// `partial` holds the best value obtained and its error estimate.
    #[error("accuracy target {target:e} not met (estimate {estimate:e})")]
    Accuracy {
        target: f64,
        estimate: f64,
        partial: Option<(f64, f64)>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition {
            message: msg.into(),
            max_t: None,
        }
    }
}
