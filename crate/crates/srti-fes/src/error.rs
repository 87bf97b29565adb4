use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FesError {
    #[error("edge {0} is not an edge of the instance")]
    UnknownEdge(usize),
    #[error("the fixed edges do not form a matching")]
    NotAMatching,
    #[error("fixed edge {0} is not in the feedback edge set")]
    NotInFeedbackSet(usize),
    #[error("vertex {vertex} is not an endpoint of edge {edge}")]
    NotAnEndpoint { edge: usize, vertex: usize },
    #[error("edge {0} needs an endpoint choice")]
    MissingChoice(usize),
    #[error("reduced instance is not a forest with pendant triangles")]
    NotAForest,
    #[error("computed matching failed the final stability check")]
    Unverified,
}
