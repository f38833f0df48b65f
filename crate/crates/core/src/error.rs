use thiserror::Error;

use crate::graph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no arcs")]
    NoArcs,

    #[error("{} validation error(s); first at line {}: {}",
        .0.errors.len(),
        .0.errors.first().map_or(0, |e| e.line),
        .0.errors.first().map_or("", |e| e.message.as_str()))]
    Validation(ValidationReport),

    #[error("{0}")]
    Invalid(String),

    /// A Γ or Θ vector whose length differs from the network's longest path.
    #[error("{what} has length {found}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
