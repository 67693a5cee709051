use thiserror::Error;

/// Contract violations surfaced by library entry points.
///
/// Hot-loop arithmetic never allocates one of these; validation happens at
/// construction time so inner loops can rely on already-checked state.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter failed its documented range or consistency check.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A slice had a different length than the search space dimension.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Lower/upper bound vectors were inconsistent or non-finite.
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    /// An aggregate was requested over an empty sample.
    #[error("empty sample: {0}")]
    EmptySample(&'static str),

    /// A comparison table was assembled from an incomplete set of cells.
    #[error("incomplete comparison grid: missing {0}")]
    MissingCell(String),

    /// A state-machine operation was invoked before its trigger condition.
    #[error("operation out of order: {0}")]
    OutOfOrder(String),

    /// A suite manifest line could not be parsed.
    #[error("malformed manifest line {line}: {reason}")]
    MalformedManifest { line: usize, reason: String },

    /// An identifier (algorithm or base function name) was not recognized.
    #[error("unknown identifier {kind}: {name}")]
    UnknownName { kind: &'static str, name: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
