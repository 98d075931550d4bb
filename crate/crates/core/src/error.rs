use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A code, field, or simulation parameter is out of range.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// A field operation was asked for something undefined, e.g. the inverse of zero.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs disagree with each other (buffer sizes, generation ids, code parameters).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The object is not in a state that allows the call.
    #[error("invalid state: {0}")]
    State(String),

    /// A decoder was configured with a mapping it cannot work with.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    /// Decoding stopped short of the rank it needs.
    #[error("insufficient rank: achieved {achieved} of {required}")]
    Rank { achieved: usize, required: usize },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(offset: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            reason: reason.into(),
        }
    }

    /// Attaches the file the error came from.
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Param(_) | Error::Config(_) | Error::Contract(_) | Error::Domain(_) => 2,
            Error::Json(_) => 2,
            Error::Rank { .. } => 3,
            Error::Io(_) | Error::Parse { .. } | Error::State(_) => 4,
            Error::File { source, .. } => source.exit_code(),
        }
    }
}
