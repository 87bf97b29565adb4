use srti_model::Graph;

use crate::error::TcdError;
use crate::tcd::{TcdInfo, TreeCutDecomposition};
use crate::torso::torso;

/// Largest graph accepted by the exhaustive tree-cut width search.
pub const TINY_CAP: usize = 6;

/// Exact tree-cut width by exhaustive search over bag partitions and tree
/// shapes. Empty nodes of degree ≤ 2 never help and are skipped; at most two
/// empty nodes are tried (one for six vertices).
pub fn tcw_exact_tiny(g: &Graph) -> Result<usize, TcdError> {
    let n = g.n();
    if n > TINY_CAP {
        return Err(TcdError::TooLarge { n, cap: TINY_CAP });
    }
    if n == 0 {
        return Ok(0);
    }
    let max_empty = if n >= 6 { 1 } else { 2 };
    let mut best = n;
    let mut labels = vec![0usize; n];
    set_partitions(n, 0, 0, &mut labels, &mut |blocks, labels| {
        let mut bags = vec![Vec::new(); blocks];
        for (v, &b) in labels.iter().enumerate() {
            bags[b].push(v);
        }
        for empty in 0..=max_empty {
            let k = blocks + empty;
            if k == 1 {
                let tcd = TreeCutDecomposition::trivial(n);
                best = best.min(width_below(g, &tcd, best));
                continue;
            }
            if empty > 0 && k < 4 {
                continue;
            }
            let mut all_bags = bags.clone();
            all_bags.resize(k, Vec::new());
            let mut seq = vec![0usize; k - 2];
            loop {
                if let Some(edges) = prufer_tree(&seq, k) {
                    let deg_ok = (blocks..k)
                        .all(|t| edges.iter().filter(|&&(a, b)| a == t || b == t).count() >= 3);
                    if deg_ok {
                        let tcd = rooted(&edges, k, all_bags.clone());
                        best = best.min(width_below(g, &tcd, best));
                    }
                }
                if !increment(&mut seq, k) {
                    break;
                }
            }
        }
    });
    Ok(best)
}

fn increment(seq: &mut [usize], base: usize) -> bool {
    for d in seq.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn prufer_tree(seq: &[usize], k: usize) -> Option<Vec<(usize, usize)>> {
    let mut degree = vec![1usize; k];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &s in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1)?;
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Some(edges)
}

fn rooted(edges: &[(usize, usize)], k: usize, bags: Vec<Vec<usize>>) -> TreeCutDecomposition {
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![None; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(t) = stack.pop() {
        for &s in &adj[t] {
            if !seen[s] {
                seen[s] = true;
                parent[s] = Some(t);
                stack.push(s);
            }
        }
    }
    TreeCutDecomposition::new(parent, bags)
}

/// Width of `tcd`, or `bound` as soon as some node reaches it.
fn width_below(g: &Graph, tcd: &TreeCutDecomposition, bound: usize) -> usize {
    let info = TcdInfo::new(g, tcd);
    let mut w = 0;
    for t in 0..tcd.len() {
        w = w.max(info.adh(t));
        if w >= bound {
            return bound;
        }
    }
    for t in 0..tcd.len() {
        w = w.max(torso(g, tcd, &info, t).suppressed_size());
        if w >= bound {
            return bound;
        }
    }
    w
}

fn set_partitions(
    n: usize,
    v: usize,
    blocks: usize,
    labels: &mut Vec<usize>,
    f: &mut impl FnMut(usize, &[usize]),
) {
    if v == n {
        f(blocks, labels);
        return;
    }
    for b in 0..=blocks {
        labels[v] = b;
        set_partitions(n, v + 1, blocks.max(b + 1), labels, f);
    }
}
