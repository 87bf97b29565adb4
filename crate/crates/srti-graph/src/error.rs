use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TcdError {
    #[error("vertex {0} is in more than one bag")]
    DuplicateVertex(usize),
    #[error("vertex {0} is in no bag")]
    MissingVertex(usize),
    #[error("bag vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("decomposition tree is not a rooted tree: {0}")]
    NotATree(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}
