use thiserror::Error;

use crate::report::BoundCheck;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("set size {got} does not match the required size {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("peel wanted to delete more than {cap} vertices; the input is not uniformly dense")]
    PeelCapExceeded { cap: usize },

    #[error("Hall condition violated: matching of size {found} on a tight set of size {expected}")]
    HallViolation { expected: usize, found: usize },

    #[error("{what} exceeds the cap of {cap} (got {got})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
    },

    #[error("asserted bound failed: {}", failed_names(.0))]
    BoundViolation(Vec<BoundCheck>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn failed_names(bounds: &[BoundCheck]) -> String {
    bounds
        .iter()
        .filter(|b| !b.pass)
        .map(|b| format!("{} ({} vs {})", b.name, b.achieved, b.threshold))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Process exit code used by the `nreg` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter { .. }
            | Error::Precondition(_)
            | Error::SizeMismatch { .. }
            | Error::PeelCapExceeded { .. }
            | Error::VertexOutOfRange { .. } => 2,
            Error::CapExceeded { .. } => 3,
            Error::Io(_) | Error::Parse { .. } | Error::SelfLoop(_) | Error::DuplicateEdge(..) => 4,
            Error::Json(_) => 4,
            Error::HallViolation { .. } | Error::BoundViolation(_) => 1,
        }
    }
}
