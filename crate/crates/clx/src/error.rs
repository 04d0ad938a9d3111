use thiserror::Error;

/// Errors surfaced by set construction, functional evaluation and the
/// scenario runner. Mathematical verdicts (refuted cells, failed stability
/// trials) are data, not errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A radius function evaluated to a nonpositive value where positivity
    /// is required.
    #[error("radius function is not positive at {at} (value {value})")]
    NonPositiveRadius { at: String, value: f64 },

    /// A selection could not be completed because some source point has no
    /// candidate within its radius.
    #[error("no candidate within radius {radius} of {point}")]
    NoCandidateInRange { point: String, radius: f64 },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// An internal consistency check failed (e.g. the classifier's
    /// implication-matrix audit). Indicates a bug, never a verdict.
    #[error("internal audit failure: {0}")]
    Audit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
