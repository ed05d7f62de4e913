use thiserror::Error;

/// Errors raised by network construction, evaluation and conversion.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The caller passed an input the operation cannot accept (wrong length, NaN, ...).
    #[error("rejected input: {0}")]
    InvalidInput(String),
    /// Two networks (or a network and a partition) do not fit together.
    #[error("structural error: {0}")]
    Structural(String),
    /// A builder or verifier parameter is out of range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A series or polynomial specification cannot support the request.
    #[error("specification error: {0}")]
    Specification(String),
    /// A conversion could not size its shift constants.
    #[error("conversion error: {0}")]
    Conversion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Prefix the message with `ctx`, keeping the variant.
    pub fn context(self, ctx: impl std::fmt::Display) -> Error {
        match self {
            Error::InvalidInput(m) => Error::InvalidInput(format!("{ctx}: {m}")),
            Error::Structural(m) => Error::Structural(format!("{ctx}: {m}")),
            Error::Parameter(m) => Error::Parameter(format!("{ctx}: {m}")),
            Error::Specification(m) => Error::Specification(format!("{ctx}: {m}")),
            Error::Conversion(m) => Error::Conversion(format!("{ctx}: {m}")),
        }
    }
}
