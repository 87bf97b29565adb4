//! Dynamic program over tree-cut decompositions for stable roommates with
//! ties and incomplete lists: existence, perfect, and a ½-approximation of
//! maximum size.

mod classes;
mod complies;
mod context;
mod error;
mod pee;
mod solve;
mod step;
mod table;

pub use classes::{
    class_front, classify_class, contacts_of, good_class_candidates, light_classes, reduce_bad_class, ChildClass,
    ClassKind, ClassOption, ClassPartition, Contact, NodeMatching,
};
pub use complies::{complies, exhaustive_table, leaf_table};
pub use context::{DpContext, Mode, MAX_ADHESION};
pub use error::TcwError;
pub use pee::{build_pee_2sat, BadChain, Coord, PeeChild, PeeError, PeeFormula, PeeInput, PeeStatus, PeeVertex};
pub use solve::{approx_max, compute_tables, node_table, solve, solve_with, SolveOptions};
pub use step::{heavy_candidate_family, induction_step, HeavyChoice};
pub use table::{all_vectors, vector_at, vector_index, DpTable, HVector};
