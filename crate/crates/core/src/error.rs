use std::io;

/// Errors raised by index construction, queries and (de)serialization.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what} {value} out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("sequence must not be empty")]
    EmptySequence,
    #[error("argument {what} must not decrease (previous {previous}, got {got})")]
    NonMonotone {
        what: &'static str,
        previous: usize,
        got: usize,
    },
    #[error("document {doc} contains the reserved terminator byte 0x00 at offset {offset}")]
    TerminatorInDocument { doc: usize, offset: usize },
    #[error("pattern must be non-empty and free of the terminator byte")]
    InvalidPattern,
    #[error("malformed XML at byte {pos}: {msg}")]
    Xml { pos: usize, msg: String },
    #[error("node handle {0} is not an opening parenthesis")]
    NotANode(usize),
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("corrupt or unsupported serialized data: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::OutOfRange { what, value, lo, hi })
    } else {
        Ok(())
    }
}
