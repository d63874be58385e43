use thiserror::Error;

/// Errors raised while parsing an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("missing {what}")]
    MissingLine { what: &'static str },
    #[error("line {line}: expected {expected} values, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: non-integer token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: {detail}")]
    Invariant { line: usize, detail: String },
    #[error("line {line}: unexpected trailing data")]
    TrailingData { line: usize },
}

/// Errors raised while reading an external open-set solution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("expected {expected} tokens, found {found}")]
    TokenCount { expected: usize, found: usize },
    #[error("token {index} is {token:?}, expected 0 or 1")]
    NonBinary { index: usize, token: String },
    #[error("solution opens no facility")]
    AllClosed,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range: lo {lo} > hi {hi}")]
    InvalidRange { lo: i64, hi: i64 },
    #[error("invalid dimensions: n = {n}, m = {m} (both must be at least 1)")]
    InvalidDimensions { n: usize, m: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("solution error: {0}")]
    Solution(#[from] SolutionError),
    #[error("open set is empty; at least one facility must be open")]
    EmptyOpenSet,
    #[error("open set has length {found}, instance has {expected} facilities")]
    OpenSetLength { expected: usize, found: usize },
    #[error("facility index {index} out of range (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("flipping facility {index} would close the last open facility")]
    InfeasibleFlip { index: usize },
    #[error("instance too large for exhaustive search: n = {n} > {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("cannot summarize an empty list")]
    EmptyInput,
    #[error("instance {instance_index} (n = {n}) has no runs for {algorithm}")]
    MissingAlgorithm {
        n: usize,
        instance_index: usize,
        algorithm: &'static str,
    },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
