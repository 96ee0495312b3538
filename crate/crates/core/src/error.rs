use thiserror::Error;

/// Errors produced by the library.
///
/// `Internal` marks a violated invariant (a bug), everything else is a
/// problem with the caller's input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("characteristic divides exponent: p = {p} divides m*n = {m}*{n}")]
    CharacteristicDividesExponent { p: u64, m: u64, n: u64 },

    #[error("invariant undefined for rational curve (genus 0)")]
    RationalCurve,

    #[error("family {family} not applicable: {condition}")]
    NotApplicable {
        family: &'static str,
        condition: String,
    },

    #[error("size limit exceeded: {0}")]
    Limit(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn not_applicable(family: &'static str, condition: impl Into<String>) -> Self {
        Error::NotApplicable {
            family,
            condition: condition.into(),
        }
    }

    /// True when the error signals a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
