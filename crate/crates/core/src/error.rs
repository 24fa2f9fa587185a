use thiserror::Error;

/// Errors raised by grid construction, assembly and the linear solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix in {context}: pivot {pivot:.3e} at column {column}")]
    SingularMatrix {
        context: String,
        column: usize,
        pivot: f64,
    },
    #[error("inconsistent boundary conditions: {0}")]
    InconsistentBc(String),
    #[error("unsupported load: {0}")]
    UnsupportedLoad(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

impl Error {
    /// Re-labels a singular-matrix error with the block it came from.
    pub fn in_context(self, ctx: &str) -> Error {
        match self {
            Error::SingularMatrix { column, pivot, .. } => Error::SingularMatrix {
                context: ctx.to_string(),
                column,
                pivot,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
