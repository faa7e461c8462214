use thiserror::Error;

/// Errors from graph construction and the text format.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Invalid(String),
}

/// Errors from meshing, evaluation and solving.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("{name} must be positive, got {value}")]
    NonpositiveParameter { name: &'static str, value: f64 },
    #[error("nonlinearity power p must lie in (2, 6), got {0}")]
    PowerOutOfRange(f64),
    #[error("mesh mismatch between operands")]
    MeshMismatch,
    #[error("{0}")]
    BadInput(String),
}

/// Errors from rearrangement operations.
#[derive(Debug, Error)]
pub enum RearrangeError {
    #[error("function has negative nodal values (min {0})")]
    NegativeValues(f64),
    #[error("level {0} outside the open range of the function")]
    LevelOutOfRange(f64),
    #[error("level {0} coincides with a nodal value")]
    LevelAtNode(f64),
    #[error("function is constant")]
    ConstantFunction,
}
