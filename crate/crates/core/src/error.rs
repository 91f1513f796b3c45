use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    /// The request exceeds a desk-scale limit; raise the limit explicitly to proceed.
    #[error("capability limit: {what} (limit {limit}); {hint}")]
    Capability {
        what: String,
        limit: usize,
        hint: String,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("power iteration did not converge after {iterations} iterations (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn capability(what: impl Into<String>, limit: usize, hint: impl Into<String>) -> Self {
        Error::Capability {
            what: what.into(),
            limit,
            hint: hint.into(),
        }
    }
}
