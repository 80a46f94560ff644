//! Error types shared across the crate.

use thiserror::Error;

/// A parameter fell outside the range an operation supports.
#[derive(Debug, Clone, Error)]
#[error("{msg}")]
pub struct ParamError {
    msg: String,
}

impl ParamError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParamError { msg: msg.into() }
    }
}

/// Malformed graph6 input. `offset` is the byte position in the input text.
#[derive(Debug, Clone, Error)]
pub enum Graph6Error {
    #[error("empty graph6 input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} outside graph6 range 63..=126")]
    ByteOutOfRange { byte: u8, offset: usize },
    #[error("truncated input: need {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing byte at offset {offset} after complete graph")]
    Trailing { offset: usize },
    #[error("padding bits at offset {offset} must be zero")]
    DirtyPadding { offset: usize },
    #[error("unsupported vertex count {n} (this decoder stops at {max})")]
    TooLarge { n: u64, max: u64 },
}
