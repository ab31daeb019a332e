use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("not normalizable: {0}")]
    NotNormalizable(String),
    #[error("bad reduction at p = {p}: {reason}")]
    BadReduction { p: u64, reason: String },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::BadReduction { .. } => 1,
            Error::Internal(_) => 2,
            Error::NotFound(_) | Error::NoWitness(_) | Error::NotNormalizable(_) => 3,
        }
    }

    /// Short machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Internal(_) => "internal-error",
            Error::NotFound(_) => "not-found",
            Error::NoWitness(_) => "no-witness",
            Error::NotNormalizable(_) => "not-normalizable",
            Error::BadReduction { .. } => "bad-reduction",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
