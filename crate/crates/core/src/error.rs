//! Error type shared by the whole engine.

/// Everything that can go wrong outside of plain programming bugs.
///
/// The CLI maps `Parse` to exit code 2 (bad input text) and every other
/// variant to exit code 3 (arithmetic/precondition failures at runtime).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("incompatible module records: {0}")]
    Incompatible(String),
    #[error("window error: {0}")]
    Window(String),
    #[error("not a classified family: {0}")]
    NotClassified(String),
    #[error("unsupported domain: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
