use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A ratio denominator did not clear ten times its own error bound.
    #[error("precision loss: {what} = {value:e} does not exceed 10x its error bound {bound:e}")]
    PrecisionLoss {
        what: &'static str,
        value: f64,
        bound: f64,
    },

    #[error("hypothesis of `{check}` violated: {reason}")]
    Hypothesis { check: String, reason: String },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
