use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid embedding: {0}")]
    Embedding(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hole face {0} is not a simple cycle")]
    HoleNotSimple(u32),
    #[error("vertex {0} is unreachable from site {1}")]
    Unreachable(u32, u32),
    #[error("region {region}: {msg}")]
    Region { region: u32, msg: String },
    #[error("diagram is not a tree: {0}")]
    NotATree(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
