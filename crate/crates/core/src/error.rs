use thiserror::Error;

/// Everything the library can fail with.
///
/// The variants line up with the CLI exit codes: usage errors are caller
/// mistakes, resource errors are guard refusals, and internal contradictions
/// are tripwires that fire only if a constructive step the theory guarantees
/// turns out to be impossible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("resource guard: {what} needs {needed} but the budget is {budget}")]
    Resource {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    /// A greedy completion step found no admissible vector at column `column`.
    #[error("precondition violated: no admissible vector at column {column}")]
    PreconditionViolation { column: usize },

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn contradiction(msg: impl Into<String>) -> Self {
        Error::InternalContradiction(msg.into())
    }

    /// Short machine-readable tag used in JSON error envelopes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Resource { .. } => "resource",
            Error::PreconditionViolation { .. } => "precondition",
            Error::InternalContradiction(_) => "internal-contradiction",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
