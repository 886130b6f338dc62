use thiserror::Error;

/// Errors produced by graph construction, parsing and invariant queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed caller input (bad endpoint, self-loop, bad probability, ...).
    #[error("input error: {0}")]
    Input(String),
    /// A graph6 or edge-list payload could not be decoded.
    #[error("format error: {0}")]
    Format(String),
    /// The invariant is not defined for this graph (typically n = 0).
    #[error("domain error: {0}")]
    Domain(String),
    /// The request exceeds a supported size limit.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_vertices(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::Domain(format!("{what} is undefined for the empty graph")))
    } else {
        Ok(())
    }
}
