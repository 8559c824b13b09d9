use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Unsupported Cartan type, rank, or group too large to enumerate.
    #[error("configuration error: {0}")]
    Config(String),
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Obtuse cone membership differed between two consecutive depths.
    #[error("obtuse cone depth {depth} is insufficient for {element}")]
    DepthInsufficient { depth: u64, element: String },
    /// Two independent computations of the same object disagreed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
