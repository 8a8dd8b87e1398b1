use thiserror::Error;

/// Errors raised by the statistics, estimation and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or configuration parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An input lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A closed form or oracle quantity does not exist for this input.
    #[error("not available: {0}")]
    NotAvailable(String),
    /// The requested blocking leaves fewer than two blocks.
    #[error("block plan error: {0}")]
    Plan(String),
    /// The computation is numerically meaningless for this input.
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    /// The requested Monte Carlo run exceeds the configured work budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
