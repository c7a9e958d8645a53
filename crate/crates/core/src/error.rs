use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pole of the function at {at}")]
    Pole { at: Complex64 },

    #[error("point {at} lies outside the supported domain: {reason}")]
    UnsupportedDomain { at: Complex64, reason: &'static str },

    #[error("point {at} is within {distance:.3e} of the pole at {pole}")]
    PoleProximity {
        at: Complex64,
        pole: f64,
        distance: f64,
    },

    #[error(
        "tolerance not met: achieved error estimate {achieved:.3e}, requested {requested:.3e}"
    )]
    ToleranceNotMet { achieved: f64, requested: f64 },

    #[error(
        "insufficient zero data: height {requested} requested, table only reaches {max_height}"
    )]
    InsufficientData { requested: f64, max_height: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("sanity check failed: {0}")]
    Sanity(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
