/// Simple undirected graph with a canonical edge order.
///
/// Edges are stored as `[u, v]` with `u < v`, sorted lexicographically, so the
/// edge index is the canonical order used everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<[usize; 2]>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph on `0..n`; loops are rejected, parallel pairs collapse.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut edges: Vec<[usize; 2]> = pairs
            .into_iter()
            .map(|(a, b)| {
                assert!(a < n && b < n, "edge endpoint out of range");
                assert!(a != b, "loops are not allowed");
                [a.min(b), a.max(b)]
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for (e, &[a, b]) in edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    /// Neighbors of `v` with connecting edge ids, sorted by neighbor.
    pub fn adj(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Connected component id per vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Subgraph keeping only the given edge ids (vertex set unchanged).
    pub fn edge_subgraph(&self, keep: impl Fn(usize) -> bool) -> Graph {
        Graph::new(
            self.n,
            (0..self.m())
                .filter(|&e| keep(e))
                .map(|e| (self.edges[e][0], self.edges[e][1])),
        )
    }

    /// True iff the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let comps = self.components();
        let c = comps.iter().copied().max().map_or(0, |x| x + 1);
        self.m() + c == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_lookup() {
        let g = Graph::new(4, [(3, 1), (0, 2), (1, 0), (2, 0)]);
        assert_eq!(g.edges(), &[[0, 1], [0, 2], [1, 3]]);
        assert_eq!(g.edge_between(3, 1), Some(2));
        assert_eq!(g.edge_between(2, 3), None);
        assert_eq!(g.other(1, 2), 0);
        assert!(g.is_forest());
    }

    #[test]
    fn cycle_is_not_forest() {
        let g = Graph::new(3, [(0, 1), (1, 2), (2, 0)]);
        assert!(!g.is_forest());
        assert_eq!(g.components(), vec![0, 0, 0]);
    }
}
