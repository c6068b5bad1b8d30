use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },

    #[error("{}", format_message(*.line, .message))]
    Format {
        line: Option<usize>,
        message: String,
    },

    #[error("{what} exceeds cap: {actual} > {limit}")]
    Capacity {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("membership error: {0}")]
    Membership(String),

    #[error("normality error: {0}")]
    Normality(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn format_message(line: Option<usize>, message: &str) -> String {
    match line {
        Some(l) => format!("format error at line {l}: {message}"),
        None => format!("format error: {message}"),
    }
}

impl Error {
    pub(crate) fn format(message: impl Into<String>) -> Self {
        Error::Format {
            line: None,
            message: message.into(),
        }
    }

    pub(crate) fn format_at(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line: Some(line),
            message: message.into(),
        }
    }

    pub(crate) fn argument(message: impl Into<String>) -> Self {
        Error::Argument(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
