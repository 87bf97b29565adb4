use srti_graph::TcdError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TcwError {
    #[error("invalid decomposition: {0}")]
    Decomposition(#[from] TcdError),
    #[error("decomposition covers {tcd} vertices but the instance has {graph}")]
    SizeMismatch { tcd: usize, graph: usize },
    #[error("node {node} has adhesion {adh}, above the supported maximum {cap}")]
    AdhesionTooLarge { node: usize, adh: usize, cap: usize },
    #[error("vector has {got} coordinates but the cut has {want}")]
    BadVector { got: usize, want: usize },
    #[error("edge {0} has no endpoint inside the node's subtree")]
    EdgeOutside(usize),
    #[error("edges do not form a matching")]
    NotAMatching,
    #[error("computed matching failed the final stability check")]
    Unverified,
}
