use thiserror::Error;

/// Errors raised by the toolkit. Each variant maps onto one CLI exit status.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid construction parameters (bad Cartan type/rank, bad embedding).
    #[error("configuration error: {0}")]
    Config(String),
    /// A call whose preconditions do not hold.
    #[error("usage error: {0}")]
    Usage(String),
    /// A configured cap would be exceeded.
    #[error("resource error: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: String,
        needed: u128,
        cap: u128,
    },
    /// A verification driver found a counterexample.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            Error::Usage(_) | Error::Config(_) | Error::Io(_) | Error::Json(_) => 2,
            Error::Resource { .. } => 3,
        }
    }
}
