//! Graph parameters and tree-cut decompositions.

mod build;
mod error;
mod format;
mod params;
mod tcd;
mod tiny;
mod torso;

pub use build::{coarsen, is_nice, make_nice, tcd_from_fes};
pub use error::TcdError;
pub use format::{parse_tcd, serialize_tcd};
pub use params::{
    bfs_forest, elimination_forest_height, feedback_edge_set, fvs_exact_small,
    treedepth_exact_small, DEFAULT_FVS_CAP, DEFAULT_TD_CAP,
};
pub use tcd::{ChildKind, TcdInfo, TreeCutDecomposition};
pub use tiny::{tcw_exact_tiny, TINY_CAP};
pub use torso::{torso, validate_tcd, Torso, WidthReport};
