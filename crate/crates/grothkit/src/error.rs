use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    /// Instance too large for an exact oracle or an enumeration.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Parameter combination outside the supported convex regime.
    #[error("unsupported regime: {0}")]
    Regime(String),

    #[error("matrix is not positive semidefinite: {0}")]
    NotPsd(String),
}

pub type Result<T> = std::result::Result<T, Error>;
