use srti_model::ModelError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("k must be at least 2, got {0}")]
    SmallK(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("agent name `{0}` is already in use")]
    NameCollision(String),
    #[error("not a clique: {0}")]
    NotAClique(String),
    #[error("graph file line {line}: {msg}")]
    GraphSyntax { line: usize, msg: String },
    #[error("witness check failed: {0}")]
    Witness(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
