use std::collections::{HashMap, VecDeque};

use srti_model::Graph;

use crate::error::TcdError;

pub const DEFAULT_FVS_CAP: usize = 14;
pub const DEFAULT_TD_CAP: usize = 10;

/// Breadth-first spanning forest in canonical order: parent per vertex and
/// a tree-edge flag per edge.
pub fn bfs_forest(g: &Graph) -> (Vec<Option<usize>>, Vec<bool>) {
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut tree = vec![false; g.m()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.adj(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (parent, tree)
}

/// Complement of the breadth-first spanning forest (minimum size).
pub fn feedback_edge_set(g: &Graph) -> Vec<usize> {
    let (_, tree) = bfs_forest(g);
    (0..g.m()).filter(|&e| !tree[e]).collect()
}

fn forest_without(g: &Graph, removed: &[bool]) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let sub = Graph::new(
        keep.len(),
        g.edges()
            .iter()
            .filter(|&&[a, b]| !removed[a] && !removed[b])
            .map(|&[a, b]| (pos[a], pos[b])),
    );
    sub.is_forest()
}

/// Minimum feedback vertex set by subsets of increasing size.
pub fn fvs_exact_small(g: &Graph, cap: usize) -> Result<Vec<usize>, TcdError> {
    if g.n() > cap {
        return Err(TcdError::TooLarge { n: g.n(), cap });
    }
    let n = g.n();
    let mut best: Option<(usize, u64)> = None;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|(s, _)| s <= size) {
            continue;
        }
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if forest_without(g, &removed) {
            best = Some((size, mask));
        }
    }
    let mask = best.map_or(0, |(_, m)| m);
    Ok((0..n).filter(|&v| mask >> v & 1 == 1).collect())
}

/// Exact treedepth via `td(G) = 1 + min_v td(G - v)` on connected graphs.
pub fn treedepth_exact_small(g: &Graph, cap: usize) -> Result<usize, TcdError> {
    if g.n() > cap {
        return Err(TcdError::TooLarge { n: g.n(), cap });
    }
    let nbr: Vec<u64> = (0..g.n())
        .map(|v| g.adj(v).iter().fold(0u64, |acc, &(w, _)| acc | 1 << w))
        .collect();
    let full = if g.n() == 0 { 0 } else { (1u64 << g.n()) - 1 };
    let mut memo = HashMap::new();
    Ok(td_rec(full, &nbr, &mut memo))
}

fn td_rec(mask: u64, nbr: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let start = mask.trailing_zeros() as usize;
    let mut comp = 1u64 << start;
    let mut frontier = comp;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = nbr[v] & mask & !comp;
        comp |= new;
        frontier |= new;
    }
    let res = if comp != mask {
        td_rec(comp, nbr, memo).max(td_rec(mask & !comp, nbr, memo))
    } else {
        let mut best = usize::MAX;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            best = best.min(1 + td_rec(mask & !(1u64 << v), nbr, memo));
        }
        best
    };
    memo.insert(mask, res);
    res
}

/// Checks an elimination forest (every edge joins an ancestor and a
/// descendant) and returns its height in vertices.
pub fn elimination_forest_height(g: &Graph, parent: &[Option<usize>]) -> Result<usize, String> {
    let n = g.n();
    if parent.len() != n {
        return Err(format!("expected {n} parent entries, got {}", parent.len()));
    }
    let mut depth = vec![0usize; n];
    for v in 0..n {
        let mut d = 1;
        let mut u = v;
        while let Some(p) = parent[u] {
            if p >= n {
                return Err(format!("parent {p} out of range"));
            }
            d += 1;
            if d > n {
                return Err("parent links contain a cycle".to_string());
            }
            u = p;
        }
        depth[v] = d;
    }
    let is_ancestor = |a: usize, mut b: usize| loop {
        if a == b {
            return true;
        }
        match parent[b] {
            Some(p) => b = p,
            None => return false,
        }
    };
    for &[a, b] in g.edges() {
        if !is_ancestor(a, b) && !is_ancestor(b, a) {
            return Err(format!("edge {{{a}, {b}}} joins unrelated vertices"));
        }
    }
    Ok(depth.into_iter().max().unwrap_or(0))
}
