use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested enumeration exceeds a configured work cap.
    #[error("capacity exceeded: {what} = {requested} exceeds cap {cap}")]
    Capacity {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
    /// The input does not satisfy the operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A graph or parameter set violates a structural invariant.
    #[error("invalid input: {0}")]
    Validation(String),
    /// Text input could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
