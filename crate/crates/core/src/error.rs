use thiserror::Error;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the admissible parameter range of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature did not reach the requested tolerance.
    /// Carries the best value obtained so far.
    #[error("accuracy error: {detail} (partial value {partial})")]
    Accuracy { partial: f64, detail: String },

    /// An integral or measure failed a finiteness check.
    #[error("divergence error: {0}")]
    Divergence(String),

    /// Structurally invalid input (duplicate points, mismatched lengths, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A linear system could not be factorized.
    #[error("singular system: {0}")]
    Singular(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
