use thiserror::Error;

use crate::word::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A letter was used outside the alphabet it was checked against.
    #[error("symbol `{symbol}` is not in the {context} alphabet")]
    ForeignSymbol { symbol: Symbol, context: &'static str },

    /// An argument violated an operation's domain (wrong flavor, partial map, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed {what}: {message}")]
    Invalid { what: &'static str, message: String },

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// A rewriting system failed validation; `family` names the offending
    /// right-hand side (`eps` for the empty word).
    #[error("rule family `{family}` is invalid: {reason}")]
    Validation { family: String, reason: String },

    #[error("exploration cap of {cap} words exceeded")]
    CapExceeded { cap: usize },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
