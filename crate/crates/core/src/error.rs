use thiserror::Error;

/// Errors raised by pattern, matrix, solver and experiment operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("pattern has wildcard cells; expand it with `expand_wildcards` first")]
    WildcardPattern,

    #[error("trivial (single-class) pattern: its forbidden class may be empty")]
    TrivialPattern,

    #[error("pattern is {rows}x{cols}, larger than the configured cap {max_rows}x{max_cols}")]
    PatternTooLarge {
        rows: usize,
        cols: usize,
        max_rows: usize,
        max_cols: usize,
    },

    #[error("{what} exceeds the configured cap of {limit}")]
    CapExceeded { what: String, limit: u64 },

    #[error("pattern needs r = {classes} classes but the alphabet has only s = {symbols} symbols")]
    TooManyClasses { classes: usize, symbols: usize },

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(String),

    #[error("vertex subsets must be nonempty")]
    EmptySubset,

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
