use thiserror::Error;

/// Validation and parsing errors of the domain model.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("`{0}` is not a valid agent identifier")]
    BadId(String),
    #[error("agent `{0}` is declared twice")]
    DuplicateAgent(String),
    #[error("agent `{0}` lists itself")]
    SelfListing(String),
    #[error("agent `{agent}` lists `{other}` more than once")]
    DuplicateListing { agent: String, other: String },
    #[error("agent `{agent}` lists unknown agent `{other}`")]
    UnknownAgent { agent: String, other: String },
    #[error("agent `{0}` has an empty tie group")]
    EmptyGroup(String),
    #[error("agent `{agent}` lists `{other}` but `{other}` does not list `{agent}`")]
    OneSided { agent: String, other: String },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid tie selection: {0}")]
    InvalidSelection(String),
}
