use srti_model::Graph;

use crate::error::TcdError;
use crate::params::bfs_forest;
use crate::tcd::{ChildKind, TcdInfo, TreeCutDecomposition};
use crate::torso::{report, validate_tcd};

/// Singleton bags along the breadth-first spanning forest, with the forest's
/// component roots attached below an extra empty root. Node `v` holds vertex
/// `v`; node `n` is the root.
pub fn tcd_from_fes(g: &Graph) -> TreeCutDecomposition {
    let n = g.n();
    let (par, _) = bfs_forest(g);
    let mut parent: Vec<Option<usize>> = par.iter().map(|p| Some(p.unwrap_or(n))).collect();
    parent.push(None);
    let mut bags: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    bags.push(Vec::new());
    let mut tcd = TreeCutDecomposition::new(parent, bags);
    tcd.names[n] = "r".to_string();
    tcd
}

/// Merges every node whose adhesion exceeds `cap` into its nearest ancestor
/// with adhesion at most `cap`. Adhesions of the remaining nodes are unchanged.
pub fn coarsen(g: &Graph, tcd: &TreeCutDecomposition, cap: usize) -> TreeCutDecomposition {
    let info = TcdInfo::new(g, tcd);
    let keep: Vec<bool> = (0..tcd.len())
        .map(|t| t == tcd.root || info.adh(t) <= cap)
        .collect();
    tcd.contract(&keep)
}

/// A thin node (adhesion ≤ 2) with a neighbor in a sibling's subtree, and
/// the node owning the smallest such neighbor.
fn violation(g: &Graph, tcd: &TreeCutDecomposition, info: &TcdInfo, t: usize) -> Option<usize> {
    let p = tcd.parent[t]?;
    if info.adh(t) > 2 {
        return None;
    }
    let mut best: Option<usize> = None;
    for &e in &info.cut[t] {
        let [a, b] = g.edge(e);
        let outer = if info.in_y[t][a] { b } else { a };
        if info.in_y[p][outer] && info.owner[outer] != p && best.is_none_or(|u| outer < u) {
            best = Some(outer);
        }
    }
    best.map(|u| info.owner[u])
}

/// True iff no thin node has a neighbor inside a sibling's subtree.
pub fn is_nice(g: &Graph, tcd: &TreeCutDecomposition) -> bool {
    let info = TcdInfo::new(g, tcd);
    (0..tcd.len()).all(|t| violation(g, tcd, &info, t).is_none())
}

fn cleanup(tcd: &TreeCutDecomposition) -> TreeCutDecomposition {
    let mut cur = tcd.clone();
    loop {
        let ch = cur.children();
        let useless = (0..cur.len()).find(|&t| {
            t != cur.root && cur.bags[t].is_empty() && ch[t].len() <= 1
        });
        let Some(t) = useless else { return cur };
        let keep: Vec<bool> = (0..cur.len()).map(|s| s != t).collect();
        cur = cur.contract(&keep);
    }
}

/// Rewrites the decomposition so that thin nodes only see their own subtree,
/// the parent bag, or vertices outside the parent's subtree; removes useless
/// empty nodes; labels every non-root node LIGHT or HEAVY. Moves that would
/// increase the width are skipped.
pub fn make_nice(
    g: &Graph,
    tcd: &TreeCutDecomposition,
) -> Result<(TreeCutDecomposition, Vec<Option<ChildKind>>), TcdError> {
    let start = validate_tcd(g, tcd)?;
    let mut cur = tcd.clone();
    let mut skipped = vec![false; cur.len()];
    let mut queue = vec![cur.root];
    let mut qi = 0;
    while qi < queue.len() {
        let p = queue[qi];
        qi += 1;
        loop {
            let info = TcdInfo::new(g, &cur);
            let ch = &info.children[p];
            let found = ch
                .iter()
                .filter(|&&t| !skipped[t])
                .find_map(|&t| violation(g, &cur, &info, t).map(|s| (t, s)));
            let Some((t, s)) = found else {
                queue.extend(info.children[p].iter().copied());
                break;
            };
            let mut moved = cur.clone();
            moved.parent[t] = Some(s);
            let after = report(g, &moved, &TcdInfo::new(g, &moved));
            if after.width <= start.width {
                cur = moved;
            } else {
                skipped[t] = true;
            }
        }
    }
    let out = cleanup(&cur);
    let info = TcdInfo::new(g, &out);
    let kinds = info.kinds(g, &out);
    debug_assert!(report(g, &out, &info).width <= start.width);
    Ok((out, kinds))
}
