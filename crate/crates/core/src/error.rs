use thiserror::Error;

/// Errors produced by the library.
///
/// `TheoremViolation` is reserved for outcomes that a proven statement rules
/// out; seeing one means the implementation is wrong, and the message carries
/// enough of the instance to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// `bounds` brackets the sought value when the search computes one.
    #[error("resource limit reached: {what}{}", bounds_note(.bounds))]
    ResourceLimit { what: String, bounds: Option<(u64, u64)> },

    #[error("missing prerequisite value: {0}")]
    DependencyMissing(String),

    #[error("theorem violation (implementation bug): {0}")]
    TheoremViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

fn bounds_note(bounds: &Option<(u64, u64)>) -> String {
    match bounds {
        Some((lo, hi)) => format!(" (known bounds: {lo}..={hi})"),
        None => String::new(),
    }
}
