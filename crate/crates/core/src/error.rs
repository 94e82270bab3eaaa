use thiserror::Error;

/// Errors produced by the estimators, the sampler and the experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid window: {0}")]
    Window(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("degenerate bounds: lower {low} and upper {high} must differ")]
    DegenerateBounds { low: f64, high: f64 },

    #[error("correction function is singular at alpha = 0")]
    Singularity,

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("invalid distribution spec: {0}")]
    Spec(String),

    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
