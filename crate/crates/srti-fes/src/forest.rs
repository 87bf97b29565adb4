use srti_model::{is_stable, Instance, Matching, INF};

use crate::error::FesError;
use crate::reduce::ReducedInstance;

const NONE: i64 = i64::MIN;

/// Maximum stable matching of a reduced instance, in its own edge ids.
///
/// Every triangle vertex pair is matched and its guarded vertex must be
/// matched inside the forest; the rest is a dynamic program over the forest
/// where a vertex is unmatched, matched to its parent, or matched to one
/// specific child.
pub fn solve_reduced_max(red: &ReducedInstance) -> Result<Option<Matching>, FesError> {
    let h = &red.h;
    let g = h.graph();
    let n = g.n();
    let mut active = vec![true; n];
    let mut must = vec![false; n];
    let mut guard_edges = Vec::new();
    for &[v, p1, p2] in &red.guards {
        active[p1] = false;
        active[p2] = false;
        must[v] = true;
        for (a, b) in [(v, p1), (v, p2), (p1, p2)] {
            if g.edge_between(a, b).is_none() {
                return Err(FesError::NotAForest);
            }
        }
        guard_edges.push(g.edge_between(p1, p2).expect("checked"));
    }
    for (v, &a) in active.iter().enumerate() {
        if !a && g.adj(v).iter().any(|&(w, _)| active[w] && !must[w]) {
            return Err(FesError::NotAForest);
        }
    }
    let Some(mut edges) = forest_max(h, &active, &must)? else {
        return Ok(None);
    };
    edges.extend(guard_edges);
    let m = Matching::new(g, edges).map_err(|_| FesError::Unverified)?;
    if !is_stable(h, &m).unwrap_or(false) {
        return Err(FesError::Unverified);
    }
    Ok(Some(m))
}

struct Tree {
    parent: Vec<Option<(usize, usize)>>,
    /// Children with the connecting edge.
    children: Vec<Vec<(usize, usize)>>,
    roots: Vec<usize>,
    /// Parents after children.
    order: Vec<usize>,
}

fn root_forest(h: &Instance, active: &[bool]) -> Result<Tree, FesError> {
    let g = h.graph();
    let n = g.n();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut roots = Vec::new();
    let mut order = Vec::new();
    for s in 0..n {
        if !active[s] || seen[s] {
            continue;
        }
        roots.push(s);
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(w, e) in g.adj(v) {
                if !active[w] || parent[v].is_some_and(|(_, pe)| pe == e) {
                    continue;
                }
                if seen[w] {
                    return Err(FesError::NotAForest);
                }
                seen[w] = true;
                parent[w] = Some((v, e));
                children[v].push((w, e));
                stack.push(w);
            }
        }
    }
    order.reverse();
    Ok(Tree { parent, children, roots, order })
}

/// States: 0 = unmatched, 1 = matched to parent, 2 + i = matched to child i.
fn partner_rank(h: &Instance, t: &Tree, v: usize, s: usize) -> u32 {
    match s {
        0 => INF,
        1 => h.rk(v, t.parent[v].expect("has parent").0),
        _ => h.rk(v, t.children[v][s - 2].0),
    }
}

fn states(t: &Tree, v: usize) -> usize {
    2 + t.children[v].len()
}

/// Best child state given the parent's state, or `None`.
fn best_child(h: &Instance, t: &Tree, val: &[Vec<i64>], v: usize, sv: usize, i: usize) -> Option<usize> {
    let (c, _) = t.children[v][i];
    if sv == 2 + i {
        return (val[c][1] != NONE).then_some(1);
    }
    let rv = partner_rank(h, t, v, sv);
    let (rvc, rcv) = (h.rk(v, c), h.rk(c, v));
    let mut best: Option<usize> = None;
    for sc in (0..states(t, c)).filter(|&s| s != 1) {
        if val[c][sc] == NONE || (rvc < rv && rcv < partner_rank(h, t, c, sc)) {
            continue;
        }
        if best.is_none_or(|b| val[c][sc] > val[c][b]) {
            best = Some(sc);
        }
    }
    best
}

fn forest_max(h: &Instance, active: &[bool], must: &[bool]) -> Result<Option<Vec<usize>>, FesError> {
    let t = root_forest(h, active)?;
    let n = h.n();
    let mut val: Vec<Vec<i64>> = vec![Vec::new(); n];
    for &v in &t.order {
        let k = states(&t, v);
        let mut row = vec![NONE; k];
        for (sv, slot) in row.iter_mut().enumerate() {
            if (sv == 0 && must[v]) || (sv == 1 && t.parent[v].is_none()) {
                continue;
            }
            let mut total: i64 = if sv >= 2 { 1 } else { 0 };
            let mut ok = true;
            for i in 0..t.children[v].len() {
                let c = t.children[v][i].0;
                match best_child(h, &t, &val, v, sv, i) {
                    Some(sc) => total += val[c][sc],
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                *slot = total;
            }
        }
        val[v] = row;
    }
    let mut edges = Vec::new();
    for &r in &t.roots {
        let mut best: Option<usize> = None;
        for s in (0..states(&t, r)).filter(|&s| s != 1) {
            if val[r][s] != NONE && best.is_none_or(|b| val[r][s] > val[r][b]) {
                best = Some(s);
            }
        }
        let Some(s) = best else { return Ok(None) };
        let mut stack = vec![(r, s)];
        while let Some((v, sv)) = stack.pop() {
            if sv >= 2 {
                edges.push(t.children[v][sv - 2].1);
            }
            for i in 0..t.children[v].len() {
                let sc = best_child(h, &t, &val, v, sv, i).expect("feasible state");
                stack.push((t.children[v][i].0, sc));
            }
        }
    }
    Ok(Some(edges))
}
