use srti_model::Graph;

use crate::error::TcdError;

/// Rooted tree with a near-partition of the vertices into bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCutDecomposition {
    /// Node identifiers (used by the text format).
    pub names: Vec<String>,
    pub parent: Vec<Option<usize>>,
    /// Sorted vertex list per node; empty bags are allowed.
    pub bags: Vec<Vec<usize>>,
    pub root: usize,
}

/// Light children can be handled by signature classes; heavy ones are guessed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChildKind {
    Light,
    Heavy,
}

impl TreeCutDecomposition {
    /// Builds from parent links; node names default to their indices.
    pub fn new(parent: Vec<Option<usize>>, mut bags: Vec<Vec<usize>>) -> TreeCutDecomposition {
        assert_eq!(parent.len(), bags.len());
        for b in &mut bags {
            b.sort_unstable();
        }
        let root = parent.iter().position(|p| p.is_none()).unwrap_or(0);
        let names = (0..parent.len()).map(|i| i.to_string()).collect();
        TreeCutDecomposition { names, parent, bags, root }
    }

    /// Single node holding every vertex.
    pub fn trivial(n: usize) -> TreeCutDecomposition {
        TreeCutDecomposition::new(vec![None], vec![(0..n).collect()])
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (t, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(t);
            }
        }
        ch
    }

    /// Checks tree shape and that bags partition `0..n`.
    pub fn check_structure(&self, n: usize) -> Result<(), TcdError> {
        let k = self.len();
        if k == 0 {
            return Err(TcdError::NotATree("no nodes".into()));
        }
        if self.parent.len() != self.bags.len() || self.names.len() != k {
            return Err(TcdError::NotATree("inconsistent node arrays".into()));
        }
        let roots: Vec<usize> = (0..k).filter(|&t| self.parent[t].is_none()).collect();
        if roots != [self.root] {
            return Err(TcdError::NotATree(format!("expected exactly one root, found {}", roots.len())));
        }
        for t in 0..k {
            let mut u = t;
            let mut steps = 0;
            while let Some(p) = self.parent[u] {
                if p >= k {
                    return Err(TcdError::NotATree(format!("parent {p} out of range")));
                }
                steps += 1;
                if steps > k {
                    return Err(TcdError::NotATree("cycle in parent links".into()));
                }
                u = p;
            }
        }
        let mut seen = vec![false; n];
        for bag in &self.bags {
            for &v in bag {
                if v >= n {
                    return Err(TcdError::VertexOutOfRange(v));
                }
                if seen[v] {
                    return Err(TcdError::DuplicateVertex(v));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(TcdError::MissingVertex(v));
        }
        Ok(())
    }

    /// Keeps only nodes with `keep[t]`, reattaching others' children to the
    /// nearest kept ancestor; bags of removed nodes move into that ancestor.
    pub(crate) fn contract(&self, keep: &[bool]) -> TreeCutDecomposition {
        assert!(keep[self.root]);
        let k = self.len();
        let up = |mut t: usize| {
            while !keep[t] {
                t = self.parent[t].expect("root is kept");
            }
            t
        };
        let mut idx = vec![usize::MAX; k];
        let kept: Vec<usize> = (0..k).filter(|&t| keep[t]).collect();
        for (i, &t) in kept.iter().enumerate() {
            idx[t] = i;
        }
        let mut bags = vec![Vec::new(); kept.len()];
        for t in 0..k {
            bags[idx[up(t)]].extend_from_slice(&self.bags[t]);
        }
        for b in &mut bags {
            b.sort_unstable();
        }
        let parent = kept
            .iter()
            .map(|&t| self.parent[t].map(|p| idx[up(p)]))
            .collect();
        let names = kept.iter().map(|&t| self.names[t].clone()).collect();
        TreeCutDecomposition { names, parent, bags, root: idx[self.root] }
    }
}

/// Derived per-node data: owners, subtree sets, cut edges.
#[derive(Clone, Debug)]
pub struct TcdInfo {
    pub children: Vec<Vec<usize>>,
    /// Children before parents.
    pub postorder: Vec<usize>,
    pub depth: Vec<usize>,
    /// Node whose bag holds each vertex.
    pub owner: Vec<usize>,
    /// Membership of each vertex in `Y_t`, per node.
    pub in_y: Vec<Vec<bool>>,
    /// Sorted vertices of `Y_t`.
    pub y: Vec<Vec<usize>>,
    /// Sorted edge ids of `cut(t)` (empty for the root).
    pub cut: Vec<Vec<usize>>,
}

impl TcdInfo {
    /// Requires a structurally valid decomposition of `g`.
    pub fn new(g: &Graph, tcd: &TreeCutDecomposition) -> TcdInfo {
        let k = tcd.len();
        let children = tcd.children();
        let mut order = vec![tcd.root];
        let mut depth = vec![0; k];
        let mut i = 0;
        while i < order.len() {
            let t = order[i];
            for &c in &children[t] {
                depth[c] = depth[t] + 1;
                order.push(c);
            }
            i += 1;
        }
        let postorder: Vec<usize> = order.into_iter().rev().collect();
        let mut owner = vec![usize::MAX; g.n()];
        for (t, bag) in tcd.bags.iter().enumerate() {
            for &v in bag {
                owner[v] = t;
            }
        }
        let mut in_y = vec![vec![false; g.n()]; k];
        let mut y = vec![Vec::new(); k];
        for &t in &postorder {
            let mut set = tcd.bags[t].clone();
            for &c in &children[t] {
                set.extend_from_slice(&y[c]);
            }
            set.sort_unstable();
            for &v in &set {
                in_y[t][v] = true;
            }
            y[t] = set;
        }
        let mut cut = vec![Vec::new(); k];
        for (e, &[a, b]) in g.edges().iter().enumerate() {
            let (mut s, mut t) = (owner[a], owner[b]);
            while s != t {
                if depth[s] >= depth[t] {
                    cut[s].push(e);
                    s = tcd.parent[s].expect("non-root");
                } else {
                    cut[t].push(e);
                    t = tcd.parent[t].expect("non-root");
                }
            }
        }
        TcdInfo { children, postorder, depth, owner, in_y, y, cut }
    }

    pub fn adh(&self, t: usize) -> usize {
        self.cut[t].len()
    }

    /// LIGHT iff adhesion ≤ 2 and every cut edge ends in the parent's bag.
    pub fn kind(&self, g: &Graph, tcd: &TreeCutDecomposition, t: usize) -> Option<ChildKind> {
        let p = tcd.parent[t]?;
        let light = self.adh(t) <= 2
            && self.cut[t].iter().all(|&e| {
                let [a, b] = g.edge(e);
                let outer = if self.in_y[t][a] { b } else { a };
                self.owner[outer] == p
            });
        Some(if light { ChildKind::Light } else { ChildKind::Heavy })
    }

    pub fn kinds(&self, g: &Graph, tcd: &TreeCutDecomposition) -> Vec<Option<ChildKind>> {
        (0..tcd.len()).map(|t| self.kind(g, tcd, t)).collect()
    }
}
