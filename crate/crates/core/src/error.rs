use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Fourier-Motzkin guard exceeded: {what} = {size} > {limit}")]
    EliminationGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("subcomplexes belong to different ambient complexes")]
    ParentMismatch,

    #[error("{0} is not a subcomplex of the ambient complex")]
    NotASubcomplex(String),

    #[error("subfamily index set must be nonempty")]
    EmptySubfamily,

    #[error("index {index} out of range for a family of {len} members")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subfamily guard exceeded: {size} members > limit {limit}")]
    GuardExceeded { size: usize, limit: usize },

    #[error("market cone derivation requires solid asymptotic cone (generator rank {rank} < {dim})")]
    NotSolid { rank: usize, dim: usize },

    #[error("bounded-type utility unsupported: {0}")]
    UnsupportedUtility(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("nerve shortcut not applicable to {theta:?}: {reason}")]
    NerveNotApplicable { theta: Vec<String>, reason: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors that signal a failed cross-check rather than bad input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}
