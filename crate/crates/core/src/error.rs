use thiserror::Error;

/// Every failure a library call can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("depth {requested} exceeds the configured maximum {max}")]
    DepthLimit { requested: u32, max: u32 },
    #[error("gap g{gap} is out of range at depth {depth} (gaps g0..g{last})")]
    GapOutOfRange { gap: u32, depth: u32, last: u32 },
    #[error("no block b{block} at depth {depth}")]
    NoSuchBlock { block: u32, depth: u32 },
    #[error("loop is non-essential (it bounds a puncture-free disk)")]
    NonEssential,
    #[error("curve is not simple")]
    NotSimple,
    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: u32, right: u32 },
    #[error("need {needed} crossings but only {available} exist")]
    TooShort { needed: usize, available: usize },
    #[error("invalid splice point: {0}")]
    InvalidSplice(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("generator exhausted after {0} crossings")]
    Exhausted(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
