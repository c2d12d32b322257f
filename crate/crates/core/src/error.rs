use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("inconsistent rotation system: {0}")]
    Rotation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no essential vertex")]
    NoEssentialVertex,
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("insufficient subdivision for {n} particles: {reason}")]
    InsufficientSubdivision { n: usize, reason: String },
    #[error("invalid cell: {0}")]
    InvalidCell(String),
    #[error("word is not a closed loop at the base configuration: {0}")]
    NotClosed(String),
    #[error("step budget of {0} exhausted")]
    Budget(u64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
