//! Domain model for stable roommates with ties and incomplete lists.

mod error;
mod format;
mod graph;
mod instance;
mod matching;
mod ties;

pub use error::ModelError;
pub use format::{parse_instance, parse_matching, serialize_instance, serialize_matching};
pub use graph::Graph;
pub use instance::{valid_id, Instance, InstanceBuilder, INF};
pub use matching::{
    blocking_pairs, is_perfect, is_stable, is_stable_ranks, partner_ranks, BlockingPair, Matching,
};
pub use ties::{break_ties, break_ties_first, TieBreak};

/// Result of building the acceptability graph.
#[derive(Clone, Debug)]
pub struct GraphReport {
    pub graph: Graph,
    /// One-sided listings `(lister, listed)` that produced no edge.
    pub dropped: Vec<(usize, usize)>,
}

/// Mutual-acceptance graph of `inst` plus the ignored one-sided listings.
pub fn build_graph(inst: &Instance) -> GraphReport {
    GraphReport { graph: inst.graph().clone(), dropped: inst.dropped().to_vec() }
}
