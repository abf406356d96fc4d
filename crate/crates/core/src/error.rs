use alloc::string::String;
use core::fmt;

/// Errors produced by configuration and by misuse of the public operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A run or problem configuration is invalid; the message names the field.
    Config(String),
    /// An operation was called with arguments violating its preconditions.
    Usage(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
