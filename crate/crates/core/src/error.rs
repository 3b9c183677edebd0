use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A construction would exceed the configured dimension bound.
    #[error("{what}: dimension {requested} exceeds the configured maximum {max}")]
    Sizing {
        what: String,
        requested: usize,
        max: usize,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("matrix is not Hermitian (max |H - H^dagger| = {violation:e})")]
    NotHermitian { violation: f64 },

    #[error("invalid parameter `{name}`: {detail}")]
    Parameter { name: String, detail: String },

    /// A constructed representation does not have the expected structure.
    #[error("structure error: {0}")]
    Structure(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
