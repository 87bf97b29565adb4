use crate::error::ModelError;
use crate::graph::Graph;
use crate::instance::{Instance, INF};

/// A set of pairwise disjoint edges, stored as sorted edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn empty() -> Matching {
        Matching::default()
    }

    /// Validates that `edges` are edges of `g` and pairwise disjoint.
    pub fn new(g: &Graph, mut edges: Vec<usize>) -> Result<Matching, ModelError> {
        edges.sort_unstable();
        edges.dedup();
        let mut used = vec![false; g.n()];
        for &e in &edges {
            if e >= g.m() {
                return Err(ModelError::InvalidMatching(format!("edge id {e} out of range")));
            }
            for v in g.edge(e) {
                if used[v] {
                    return Err(ModelError::InvalidMatching(format!(
                        "vertex {v} is covered twice"
                    )));
                }
                used[v] = true;
            }
        }
        Ok(Matching { edges })
    }

    /// Wraps edge ids the caller knows to be a matching.
    pub fn from_edges_unchecked(mut edges: Vec<usize>) -> Matching {
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Partner per vertex (`None` when unmatched).
    pub fn mates(&self, g: &Graph) -> Vec<Option<usize>> {
        let mut mate = vec![None; g.n()];
        for &e in &self.edges {
            let [a, b] = g.edge(e);
            mate[a] = Some(b);
            mate[b] = Some(a);
        }
        mate
    }

    /// Matched pairs `(u, v)` with `u < v`, in edge order.
    pub fn pairs(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|&e| {
                let [a, b] = g.edge(e);
                (a, b)
            })
            .collect()
    }
}

/// An edge `{v, w}` whose endpoints strictly prefer each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingPair {
    pub edge: usize,
    pub v: usize,
    pub w: usize,
    /// `rk_v(w)` and `rk_v(M(v))`.
    pub v_ranks: (u32, u32),
    /// `rk_w(v)` and `rk_w(M(w))`.
    pub w_ranks: (u32, u32),
}

/// Rank each vertex gives its partner (`INF` when unmatched).
pub fn partner_ranks(inst: &Instance, mate: &[Option<usize>]) -> Vec<u32> {
    (0..inst.n())
        .map(|v| mate[v].map_or(INF, |w| inst.rk(v, w)))
        .collect()
}

/// All blocking pairs of `m`, in canonical edge order.
pub fn blocking_pairs(inst: &Instance, m: &Matching) -> Result<Vec<BlockingPair>, ModelError> {
    let g = inst.graph();
    let m = Matching::new(g, m.edges().to_vec())?;
    let pr = partner_ranks(inst, &m.mates(g));
    let mut out = Vec::new();
    for (e, &[v, w]) in g.edges().iter().enumerate() {
        let rv = inst.rk_edge(e, v);
        let rw = inst.rk_edge(e, w);
        if rv < pr[v] && rw < pr[w] {
            out.push(BlockingPair { edge: e, v, w, v_ranks: (rv, pr[v]), w_ranks: (rw, pr[w]) });
        }
    }
    Ok(out)
}

/// Stability test on a partner-rank vector (no validation).
pub fn is_stable_ranks(inst: &Instance, pr: &[u32]) -> bool {
    let g = inst.graph();
    g.edges()
        .iter()
        .enumerate()
        .all(|(e, &[v, w])| !(inst.rk_edge(e, v) < pr[v] && inst.rk_edge(e, w) < pr[w]))
}

pub fn is_stable(inst: &Instance, m: &Matching) -> Result<bool, ModelError> {
    Ok(blocking_pairs(inst, m)?.is_empty())
}

/// Stable and covering every agent.
pub fn is_perfect(inst: &Instance, m: &Matching) -> Result<bool, ModelError> {
    Ok(is_stable(inst, m)? && 2 * m.len() == inst.n())
}
