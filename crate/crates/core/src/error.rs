use thiserror::Error;

/// Failure modes shared by every module.
///
/// The CLI maps these onto exit codes: parse and I/O problems exit with 2,
/// violated preconditions with 3, numerical breakdown with 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: String, got: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical breakdown: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Dimension { .. } | Error::Precondition(_) => 3,
            Error::Numerical(_) => 4,
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // serde_json already appends "at line L column C".
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
