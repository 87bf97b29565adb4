//! Hardness-reduction instance generators with witness checkers, and the
//! perfect/existence transformations.

mod emit;
mod error;
mod parts;
mod sketch;
mod source;
mod tcw;
mod td;
mod transform;

pub use emit::{Built, Emitter};
pub use error::GadgetError;
pub use parts::{
    gen_edge_gadget_tcw, gen_parallel_edge_gadget, gen_vertex_gadget, EdgeGadget, Fragment,
    ParallelGadget, ParallelUse, VertexGadget,
};
pub use sketch::Sketch;
pub use source::{complete_graph, parse_graph, serialize_graph};
pub use tcw::{
    gen_tcw_reduction, tcw_big_c, tcw_clique_witness, tcw_kappa, tcw_target, Bundle, Choice, Link,
    TcwReduction,
};
pub use td::{
    clique_witness_matching, gen_td_reduction, td_agent_count, td_target, Consistency, Selection,
    TdEdge, TdReduction,
};
pub use transform::{existencefy, perfectize, perfectize_matching, perfectize_names};
