use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The CLI maps `InvalidInput`, `NonFinite` and `IllConditioned` to exit
/// code 2 and `Certificate` to exit code 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An integrand produced a NaN or infinity.
    #[error("non-finite integrand value {value} at x = {at}")]
    NonFinite { at: f64, value: f64 },

    /// A proven bound was violated. This always signals a bug.
    #[error("certificate failure: {0}")]
    Certificate(String),

    /// The Gram normal equations are numerically singular.
    #[error(
        "ill-conditioned Gram system (condition estimate {condition:.3e}); \
         closest exponent pair is {first} and {second}"
    )]
    IllConditioned {
        condition: f64,
        first: f64,
        second: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
