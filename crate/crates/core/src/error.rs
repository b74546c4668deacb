//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file; carries the 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A data invariant was violated; names the subject and rule.
    #[error("subject {subject}: {rule}")]
    Invariant { subject: String, rule: String },

    /// Argument outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numeric evaluation produced a non-finite value.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Brute-force enumeration refused: instance too large.
    #[error(
        "instance too large for exhaustive enumeration: {detail} (limit: {limit})"
    )]
    Intractable { detail: String, limit: String },

    /// Invalid run configuration; names the offending field.
    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn invariant(subject: impl Into<String>, rule: impl Into<String>) -> Self {
        Error::Invariant {
            subject: subject.into(),
            rule: rule.into(),
        }
    }

    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
