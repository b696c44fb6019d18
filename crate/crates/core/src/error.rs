use std::path::PathBuf;

/// Errors produced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("sentinel byte 0x00 occurs mid-input at offset {offset}")]
    SentinelConflict { offset: usize },

    #[error("empty input: a text must contain at least the sentinel")]
    EmptyInput,

    #[error("text does not end with the sentinel byte 0x00")]
    MissingSentinel,

    #[error("input of {n} symbols exceeds the supported maximum of {max}")]
    TextTooLarge { n: u64, max: u64 },

    #[error("value {value} does not fit in a width-32 array")]
    WidthOverflow { value: u64 },

    #[error("arrays must have length >= 1")]
    EmptyArray,

    #[error("malformed array file {path:?}: {reason}")]
    MalformedHeader { path: PathBuf, reason: String },

    #[error("{context}: input of length {len} is not a permutation of 1..=n")]
    PermutationViolation { context: &'static str, len: usize },

    #[error("LF walk revisited row {row} before completing n steps")]
    NonTerminating { row: usize },

    #[error("value stream is not a permutation of 1..=n ({reason})")]
    NotAPermutation { reason: String },

    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("parenthesis sequence is not balanced: {reason}")]
    Unbalanced { reason: String },

    #[error("value {value} is already on the bit stack")]
    DuplicatePush { value: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
