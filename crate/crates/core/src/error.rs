use thiserror::Error;

/// Failure modes shared by every module of the crate.
///
/// `kind()` gives a stable machine-readable tag used by the command-line
/// front-end when it emits error documents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precision insufficient at {bits} bits: {reason}")]
    PrecisionInsufficient { bits: u32, reason: String },
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Unsupported(_) => "unsupported",
            Error::PrecisionInsufficient { .. } => "precision_insufficient",
            Error::SearchExhausted(_) => "search_exhausted",
            Error::Inconclusive(_) => "inconclusive",
            Error::Overflow(_) => "overflow",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
