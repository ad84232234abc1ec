use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by provenance: structural misuse of the exterior
/// algebra, violated model-construction preconditions, failed mathematical
/// checks (which are ordinary results for commands that *decide* a property,
/// but errors for operations that *require* it), and resource limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two forms from different generator sets were combined.
    #[error("operands belong to different generator sets ({left} vs {right})")]
    GeneratorSetMismatch { left: String, right: String },

    /// Arithmetic between quadratic numbers with different discriminants.
    #[error("quadratic numbers have different discriminants ({left} vs {right})")]
    DiscriminantMismatch { left: i64, right: i64 },

    /// Division by zero in an exact coefficient field.
    #[error("division by zero in {context}")]
    DivisionByZero { context: String },

    /// A degree or bidegree was requested from a form without one.
    #[error("form has no well-defined {kind}: {detail}")]
    InhomogeneousForm { kind: String, detail: String },

    /// A construction precondition on numeric input failed.
    #[error("invalid input for {operation}: {detail}")]
    InvalidInput { operation: String, detail: String },

    /// A model-kind restriction was violated (e.g. Dolbeault bases are only
    /// provided for the semidirect products of complex factors).
    #[error("{operation} is not supported for this model kind: {detail}")]
    Unsupported { operation: String, detail: String },

    /// A required mathematical property failed an exact check.
    #[error("check failed in {operation}: {detail}")]
    CheckFailed { operation: String, detail: String },

    /// A candidate 2-form is not closed.
    #[error("form is not closed: d has {terms} nonzero term(s)")]
    NotClosed { terms: usize },

    /// A candidate 2-form is degenerate; the witness names the failing power.
    #[error("form is degenerate: ω^{power} = 0")]
    Degenerate { power: usize },

    /// A per-degree basis would exceed the configured size cap.
    #[error("degree {degree} basis would have {size} elements, above the cap {cap} (set SOLVCO_MAX_DEGREE_DIM to raise)")]
    TooLarge { degree: usize, size: u64, cap: u64 },

    /// An internal consistency assertion failed; indicates a bug, not bad input.
    #[error("internal assertion failed in {operation}: {detail}")]
    Internal { operation: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand constructor for [`Error::InvalidInput`].
    pub fn invalid(operation: &str, detail: impl Into<String>) -> Self {
        Error::InvalidInput {
            operation: operation.to_string(),
            detail: detail.into(),
        }
    }

    /// Shorthand constructor for [`Error::Internal`].
    pub fn internal(operation: &str, detail: impl Into<String>) -> Self {
        Error::Internal {
            operation: operation.to_string(),
            detail: detail.into(),
        }
    }
}
