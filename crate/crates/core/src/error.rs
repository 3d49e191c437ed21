use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {elem} out of range for order {order}")]
    OutOfRange { elem: usize, order: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed witness: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
