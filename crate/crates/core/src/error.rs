use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An index argument fell outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("length mismatch: left component has length {left}, right has length {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("exponent {exponent} exceeds code length {length}")]
    ExponentTooLarge { exponent: usize, length: usize },

    #[error("{what} {value} out of range {min}..={max}")]
    Range {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    /// A computation would exceed one of the enumeration budgets.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid code tree: {0}")]
    InvalidTree(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid enumerator: {0}")]
    InvalidEnumerator(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
