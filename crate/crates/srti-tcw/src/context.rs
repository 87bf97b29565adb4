use srti_graph::{validate_tcd, ChildKind, TcdInfo, TreeCutDecomposition};
use srti_model::Instance;

use crate::error::TcwError;

/// Largest adhesion for which a table is allocated.
pub const MAX_ADHESION: usize = 12;

/// Which matchings count: stable ones, or stable ones covering their subtree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Existence,
    Perfect,
}

/// An instance together with a validated decomposition of its graph.
pub struct DpContext<'a> {
    pub inst: &'a Instance,
    pub tcd: &'a TreeCutDecomposition,
    pub info: TcdInfo,
    pub kinds: Vec<Option<ChildKind>>,
}

impl<'a> DpContext<'a> {
    pub fn new(inst: &'a Instance, tcd: &'a TreeCutDecomposition) -> Result<DpContext<'a>, TcwError> {
        let covered: usize = tcd.bags.iter().map(Vec::len).sum();
        if covered != inst.n() {
            return Err(TcwError::SizeMismatch { tcd: covered, graph: inst.n() });
        }
        validate_tcd(inst.graph(), tcd)?;
        let info = TcdInfo::new(inst.graph(), tcd);
        for t in 0..tcd.len() {
            if info.adh(t) > MAX_ADHESION {
                return Err(TcwError::AdhesionTooLarge { node: t, adh: info.adh(t), cap: MAX_ADHESION });
            }
        }
        let kinds = info.kinds(inst.graph(), tcd);
        Ok(DpContext { inst, tcd, info, kinds })
    }

    /// Sorted edge ids of `cut(t)`.
    pub fn cut(&self, t: usize) -> &[usize] {
        &self.info.cut[t]
    }

    pub fn in_y(&self, t: usize, v: usize) -> bool {
        self.info.in_y[t][v]
    }

    /// Endpoint of cut edge `e` inside `Y_t` and the one outside.
    pub fn split(&self, t: usize, e: usize) -> (usize, usize) {
        let [a, b] = self.inst.graph().edge(e);
        if self.in_y(t, a) {
            (a, b)
        } else {
            (b, a)
        }
    }
}
