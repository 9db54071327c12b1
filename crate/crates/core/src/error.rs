use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("value out of f64 range: {0}")]
    Range(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("half-plane intersection is empty")]
    EmptyRegion,

    #[error("half-plane intersection is unbounded")]
    UnboundedRegion,

    #[error("half-plane intersection has empty interior")]
    LowerDimensional,

    #[error("density integrates to zero over the polytope")]
    ZeroMass,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
