use std::fmt;

/// Errors produced by table construction, codecs, bridging, and analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters violate a precondition (alphabet size, run limit, scheme
    /// compatibility, bit counts, probability range).
    InvalidParams(String),
    /// A value lies outside its documented range (index, length, horizon).
    OutOfRange(String),
    /// A word contains a run of identical symbols longer than the limit.
    ConstraintViolation(String),
    /// Malformed textual input (symbol strings, bit strings, table dumps).
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::OutOfRange(msg) => write!(f, "out of range: {msg}"),
            Error::ConstraintViolation(msg) => write!(f, "run constraint violated: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
