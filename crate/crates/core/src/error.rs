use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Arity,
    Alpha,
}

/// Location-tagged error from one of the text readers. Lines and columns
/// are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(
        kind: ParseErrorKind,
        (line, column): (usize, usize),
        message: impl Into<String>,
    ) -> Self {
        Self {
            kind,
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("`{op}` needs {expected} operands, got {found}")]
    Arity {
        op: &'static str,
        expected: &'static str,
        found: usize,
    },

    #[error("expression reads channel {channel} but the frame has width {width}")]
    WidthMismatch { channel: usize, width: usize },

    #[error("mean of an empty sequence")]
    EmptyInput,

    #[error("value {value} is outside the domain of this mean ({requirement})")]
    Domain {
        value: f64,
        requirement: &'static str,
    },

    #[error("alpha grid is not sorted ascending at position {0}")]
    UnsortedGrid(usize),

    #[error("invalid alpha: {0}")]
    InvalidAlpha(f64),

    #[error("rank {rank} is out of range 1..={width}")]
    InvalidRank { rank: usize, width: usize },

    #[error("comparator network does not sort")]
    UnsortedNetwork,

    #[error("network width {width} exceeds the exhaustive verification budget of {budget}")]
    WidthBudget { width: usize, budget: usize },

    #[error("invalid comparator network: {0}")]
    InvalidNetwork(String),

    #[error("frame value {value} at channel {channel} is outside [0, 1]")]
    OutOfRange { channel: usize, value: f64 },

    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("malformed classifier file: {0}")]
    ClassifierFormat(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
