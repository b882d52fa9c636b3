use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Ranks, variable counts or rings of the operands do not match.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// Malformed or ill-posed input (inhomogeneous data, unit elements, ...).
    #[error("input error: {0}")]
    Input(String),
    /// A declared structural property of a ring failed verification.
    #[error("structural error: {0}")]
    Structural(String),
    /// Degree cap exceeded or the computation was cancelled.
    #[error("resource error: {0}")]
    Resource(String),
    /// The operation does not apply to this kind of ring or field.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The input is a degenerate case the operation excludes.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
