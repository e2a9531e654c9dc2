use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("operation requires a cycle or path topology (got {0})")]
    NonLinearTopology(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
