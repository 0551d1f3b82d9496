use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex count mismatch: {0} vs {1}")]
    VertexCountMismatch(usize, usize),

    #[error("parse error at line {line}: {msg}")]
    ParseLine { line: usize, msg: String },

    #[error("graph6 parse error at byte offset {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The extremal construction needs b > a(|H|-1) with a + b = 1.
    #[error("extremal base requires b > a(|H|-1): a = {a}, b = {b}, |H| = {order}")]
    ExtremalCondition { a: String, b: String, order: usize },

    #[error("exhaustive mode limit exceeded: {0}; use sampled mode")]
    EnumerationCap(String),

    #[error("super-regularization trimmed {removed_a} of {size_a} / {removed_b} of {size_b}; the input pair is not eps-regular as promised")]
    TrimmedTooMuch {
        removed_a: usize,
        size_a: usize,
        removed_b: usize,
        size_b: usize,
    },

    #[error("super-regularization postcondition failed: {0}")]
    Postcondition(String),

    #[error("|S u T| = {size} is not divisible by |H| = {order}")]
    Divisibility { size: usize, order: usize },

    #[error("invalid sweep config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
