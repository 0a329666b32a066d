//! Error types shared across the crate.

use thiserror::Error;

/// Failure to read an exact rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("exponent out of range in `{0}`")]
    ExponentRange(String),
}

/// Failure to decode a value from its JSON wire form.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WireError {
    #[error("expected {expected}, found `{found}`")]
    Unexpected { expected: &'static str, found: String },
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
}

impl WireError {
    pub(crate) fn unexpected(expected: &'static str, found: &serde_json::Value) -> Self {
        WireError::Unexpected {
            expected,
            found: found.to_string(),
        }
    }
}

/// The brute-force modulus search found no certifying initial segment.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no initial segment of length <= {bound} certifies the output at effort {effort}")]
pub struct NoCertificate {
    pub effort: usize,
    pub bound: usize,
}

/// Errors raised while loading fixtures and corpus files.
#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Wire(#[from] WireError),
    #[error("unknown name kind `{0}` (expected `exact` or `grid`)")]
    NameKind(String),
}
