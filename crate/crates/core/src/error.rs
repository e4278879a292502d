use thiserror::Error;

/// Errors raised by the solver and its surrounding tooling.
///
/// Variants map one-to-one onto the failure categories a caller may want to
/// distinguish (input problems vs. budget exhaustion vs. unmet preconditions).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    Range(String),
    #[error("size violation: {0}")]
    Size(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid distribution: {0}")]
    Dist(String),
    #[error("terminal history class has no stage matrix")]
    Terminal,
    #[error("strategy coverage: {0}")]
    Coverage(String),
    #[error("redundant players present: {0}")]
    Redundant(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition not met: {0}")]
    Precond(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by exceeding a configured computation budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
