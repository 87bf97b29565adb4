use std::collections::BTreeMap;

use srti_model::Graph;

use crate::error::TcdError;
use crate::tcd::{TcdInfo, TreeCutDecomposition};

/// Torso multigraph of a node: bag vertices first, then one vertex per
/// non-empty component of the tree minus the node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torso {
    pub is_bag: Vec<bool>,
    /// Edge multiplicities (symmetric, no diagonal).
    pub mult: Vec<BTreeMap<usize, usize>>,
    pub loops: Vec<usize>,
}

/// Adhesion and torso-size per node, and the overall width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub adh: Vec<usize>,
    pub tor: Vec<usize>,
    pub width: usize,
}

impl Torso {
    pub fn len(&self) -> usize {
        self.is_bag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_bag.is_empty()
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        if a == b {
            self.loops[a] += 1;
        } else {
            *self.mult[a].entry(b).or_insert(0) += 1;
            *self.mult[b].entry(a).or_insert(0) += 1;
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.mult[v].values().sum::<usize>() + 2 * self.loops[v]
    }

    fn suppress(&mut self, v: usize) {
        let nbrs: Vec<(usize, usize)> = self.mult[v].iter().map(|(&w, &c)| (w, c)).collect();
        for &(w, _) in &nbrs {
            self.mult[w].remove(&v);
        }
        self.mult[v].clear();
        if self.loops[v] == 0 {
            match nbrs.as_slice() {
                [(u, 2)] => self.loops[*u] += 1,
                [(u, 1), (w, 1)] => self.add_edge(*u, *w),
                _ => {}
            }
        }
        self.loops[v] = 0;
    }

    /// Size after exhaustively suppressing non-bag vertices of degree ≤ 2,
    /// always taking the first suppressible vertex in `priority`.
    pub fn suppressed_size_by(&self, priority: &[usize]) -> usize {
        let mut h = self.clone();
        let mut alive = vec![true; h.len()];
        'outer: loop {
            for &v in priority {
                if alive[v] && !h.is_bag[v] && h.degree(v) <= 2 {
                    h.suppress(v);
                    alive[v] = false;
                    continue 'outer;
                }
            }
            break;
        }
        alive.iter().filter(|&&a| a).count()
    }

    /// Torso-size with the fixed index order.
    pub fn suppressed_size(&self) -> usize {
        let order: Vec<usize> = (0..self.len()).collect();
        self.suppressed_size_by(&order)
    }
}

/// Torso of node `t`.
pub fn torso(g: &Graph, tcd: &TreeCutDecomposition, info: &TcdInfo, t: usize) -> Torso {
    let bag = &tcd.bags[t];
    let mut part = vec![usize::MAX; g.n()];
    for (i, &v) in bag.iter().enumerate() {
        part[v] = i;
    }
    let mut next = bag.len();
    for &c in &info.children[t] {
        if info.y[c].is_empty() {
            continue;
        }
        for &v in &info.y[c] {
            part[v] = next;
        }
        next += 1;
    }
    let outside = g.n() - info.y[t].len();
    let parent_part = if outside > 0 {
        next += 1;
        next - 1
    } else {
        usize::MAX
    };
    let mut h = Torso {
        is_bag: (0..next).map(|i| i < bag.len()).collect(),
        mult: vec![BTreeMap::new(); next],
        loops: vec![0; next],
    };
    for &[a, b] in g.edges() {
        let pa = if info.in_y[t][a] { part[a] } else { parent_part };
        let pb = if info.in_y[t][b] { part[b] } else { parent_part };
        let contracted = |p: usize| p >= bag.len();
        if pa == pb && contracted(pa) {
            continue;
        }
        h.add_edge(pa, pb);
    }
    h
}

/// Validates the decomposition and computes adhesions, torso-sizes and width.
pub fn validate_tcd(g: &Graph, tcd: &TreeCutDecomposition) -> Result<WidthReport, TcdError> {
    tcd.check_structure(g.n())?;
    let info = TcdInfo::new(g, tcd);
    Ok(report(g, tcd, &info))
}

pub(crate) fn report(g: &Graph, tcd: &TreeCutDecomposition, info: &TcdInfo) -> WidthReport {
    let adh: Vec<usize> = (0..tcd.len()).map(|t| info.adh(t)).collect();
    let tor: Vec<usize> = (0..tcd.len())
        .map(|t| torso(g, tcd, info, t).suppressed_size())
        .collect();
    let width = adh.iter().chain(tor.iter()).copied().max().unwrap_or(0);
    WidthReport { adh, tor, width }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_bag_decomposition_has_width_n() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let tcd = TreeCutDecomposition::new(vec![None, Some(0)], vec![vec![0, 1, 2, 3], vec![]]);
        assert_eq!(validate_tcd(&g, &tcd).unwrap().width, 4);
    }

    #[test]
    fn single_vertex_and_empty_graph() {
        let g = Graph::new(1, []);
        assert_eq!(validate_tcd(&g, &TreeCutDecomposition::trivial(1)).unwrap().width, 1);
        let g = Graph::new(0, []);
        assert_eq!(validate_tcd(&g, &TreeCutDecomposition::trivial(0)).unwrap().width, 0);
    }

    #[test]
    fn triangle_as_path_has_width_two() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]);
        let tcd = TreeCutDecomposition::new(vec![None, Some(0), Some(1)], vec![vec![0], vec![1], vec![2]]);
        let r = validate_tcd(&g, &tcd).unwrap();
        assert_eq!(r.adh, vec![0, 2, 2]);
        assert_eq!(r.tor, vec![1, 1, 1]);
        assert_eq!(r.width, 2);
    }

    #[test]
    fn parallel_edges_become_a_loop() {
        // A contracted vertex joined twice to a single bag vertex.
        let mut h = Torso {
            is_bag: vec![true, false, false],
            mult: vec![BTreeMap::new(); 3],
            loops: vec![0; 3],
        };
        h.add_edge(0, 1);
        h.add_edge(0, 1);
        h.add_edge(2, 2);
        assert_eq!(h.suppressed_size(), 1);
        let mut order_b = h.clone();
        order_b.add_edge(1, 2);
        assert_eq!(order_b.suppressed_size_by(&[2, 1, 0]), 3);
    }
}
