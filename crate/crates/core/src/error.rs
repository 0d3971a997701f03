use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the operation's domain (negative index, k below pattern length, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid permutation {0:?}: entries must be exactly 1..=m, each once")]
    InvalidPermutation(Vec<u32>),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid ordered set partition: {0}")]
    InvalidPartition(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A quantity that must be an integer came out fractional; always a formula bug.
    #[error("{context}: expected an integer, got {value}")]
    NonIntegral { context: String, value: String },

    #[error("missing value op({n},{k}) needed by {needed_by}")]
    MissingValue { n: i64, k: i64, needed_by: String },

    #[error("recurrence stalled at ({n},{k}): {reason}")]
    Recurrence { n: i64, k: i64, reason: String },

    #[error("series windows differ: {left:?} vs {right:?}")]
    WindowMismatch { left: (usize, usize), right: (usize, usize) },

    #[error("method `{method}` does not support pattern {pattern}")]
    UnsupportedPattern { method: String, pattern: String },

    #[error("method `{method}` is limited to n <= {budget} for this pattern (requested n = {n}); raise --budget to override")]
    BudgetExceeded { method: String, budget: u32, n: u32 },

    #[error("unknown {kind} `{name}` (available: {available})")]
    Unknown { kind: &'static str, name: String, available: String },
}
