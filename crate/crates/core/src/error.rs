use thiserror::Error;

/// Errors raised across the classification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// A factor of the given degree has no Gaussian-rational root.
    #[error("polynomial has an irreducible remainder of degree {0}")]
    IrreducibleRemainder(usize),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid eigenvalue family: {0}")]
    InvalidFamily(String),
    #[error("invalid parameter vector: {0}")]
    InvalidParams(String),
    #[error("degenerate configuration: points coincide")]
    DegenerateConfiguration,
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("H generator requires N = m + 1")]
    HNotApplicable,
    #[error("state is not true tripartite entangled")]
    NotTrueTripartite,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
