use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("family is not downward-closed: {missing} is a subset of member {member} but is not a member")]
    NotDownwardClosed { member: String, missing: String },

    #[error("item index {index} out of range for L = {len}")]
    ItemOutOfRange { index: usize, len: usize },

    #[error("no safe solution: every member of the family has variance at or above the budget")]
    NoSafeSolution,

    #[error("infeasible moments: mean {mean}, variance {variance}")]
    InfeasibleMoments { mean: f64, variance: f64 },

    #[error("reward {0} outside [0, 1]")]
    RewardOutOfRange(f64),

    #[error("item {0} has not been pulled; its bounds are undefined")]
    Unpulled(usize),

    #[error("pull count must be at least 1")]
    ZeroCount,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("checkpoint grids differ between aggregates")]
    CheckpointMismatch,

    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error("run failed: {0}")]
    Runtime(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by user input rather than a failing run.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInstance(_)
                | Error::NotDownwardClosed { .. }
                | Error::ItemOutOfRange { .. }
                | Error::NoSafeSolution
                | Error::InfeasibleMoments { .. }
                | Error::InvalidParameter(_)
                | Error::Config { .. }
        )
    }
}
