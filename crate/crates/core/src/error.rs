use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("Fock truncation too small: dim {dim} leaves tail weight {tail:e}, need dim >= {required}")]
    Truncation { dim: usize, tail: f64, required: usize },

    #[error("invalid state: {0}")]
    Validity(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("Gaussian channel violates complete positivity: {0}")]
    NotCptp(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Error {
    Error::Parameter { name, reason: reason.into() }
}
