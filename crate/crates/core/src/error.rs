use thiserror::Error;

/// Errors raised by the lattice toolkit.
#[derive(Debug, Error)]
pub enum LatticeError {
    /// An input violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A measurement could not be made reliably from the supplied data.
    #[error("measurement unreliable: {0}")]
    Unreliable(String),

    /// The implicit time step produced a singular linear system.
    #[error("singular system: {0}")]
    Singular(String),

    /// An internal invariant failed. This always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(LatticeError::Domain(msg.into()))
}
