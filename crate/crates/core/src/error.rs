use thiserror::Error;

/// Errors surfaced by the workbench.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root datum type: {0}")]
    UnsupportedType(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is outside the open Bruhat cell: {0}")]
    NotInCell(String),
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
