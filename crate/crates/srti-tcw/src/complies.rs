use srti_model::{Graph, Instance, Matching, INF};

use crate::context::{DpContext, Mode};
use crate::error::TcwError;
use crate::table::DpTable;

/// Calls `f` on every matching within `edges` (ids into `g`) that avoids
/// vertices already marked in `used`. Stops early when `f` returns false.
pub(crate) fn for_each_matching(
    g: &Graph,
    edges: &[usize],
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let Some((&e, rest)) = edges.split_first() else {
        return f(chosen);
    };
    if !for_each_matching(g, rest, used, chosen, f) {
        return false;
    }
    let [a, b] = g.edge(e);
    if used[a] || used[b] {
        return true;
    }
    used[a] = true;
    used[b] = true;
    chosen.push(e);
    let go = for_each_matching(g, rest, used, chosen, f);
    chosen.pop();
    used[a] = false;
    used[b] = false;
    go
}

fn rank_of(inst: &Instance, v: usize, mate: Option<usize>) -> u32 {
    mate.map_or(INF, |w| inst.rk(v, w))
}

/// Closure of `t`: `Y_t` plus every vertex adjacent to it.
fn closure(ctx: &DpContext, t: usize) -> Vec<bool> {
    let g = ctx.inst.graph();
    let mut clos = ctx.info.in_y[t].clone();
    for &e in ctx.cut(t) {
        let [a, b] = g.edge(e);
        clos[a] = true;
        clos[b] = true;
    }
    clos
}

/// Mode and blocking-pair conditions, which do not depend on the vector.
fn inner_ok(ctx: &DpContext, t: usize, clos: &[bool], mate: &[Option<usize>], mode: Mode) -> bool {
    let inst = ctx.inst;
    let g = inst.graph();
    if mode == Mode::Perfect && ctx.info.y[t].iter().any(|&v| mate[v].is_none()) {
        return false;
    }
    for (e, &[a, b]) in g.edges().iter().enumerate() {
        if !clos[a] || !clos[b] {
            continue;
        }
        let blocking = inst.rk_edge(e, a) < rank_of(inst, a, mate[a])
            && inst.rk_edge(e, b) < rank_of(inst, b, mate[b]);
        if blocking {
            let escape = (!ctx.in_y(t, a) && mate[a].is_none()) || (!ctx.in_y(t, b) && mate[b].is_none());
            if !escape {
                return false;
            }
        }
    }
    true
}

/// Whether `m` complies with `h` at node `t`: cut edges are matched exactly
/// where `h` is 0, a 1 promises the inner endpoint is matched at least as well
/// as the cut partner, and any blocking pair inside the closure involves an
/// unmatched outside vertex. `Mode::Perfect` also requires `Y_t` covered.
pub fn complies(ctx: &DpContext, t: usize, m: &Matching, h: &[i8], mode: Mode) -> Result<bool, TcwError> {
    let inst = ctx.inst;
    let g = inst.graph();
    let cut = ctx.cut(t);
    if h.len() != cut.len() {
        return Err(TcwError::BadVector { got: h.len(), want: cut.len() });
    }
    for &e in m.edges() {
        if e >= g.m() {
            return Err(TcwError::NotAMatching);
        }
        let [a, b] = g.edge(e);
        if !ctx.in_y(t, a) && !ctx.in_y(t, b) {
            return Err(TcwError::EdgeOutside(e));
        }
    }
    let m = Matching::new(g, m.edges().to_vec()).map_err(|_| TcwError::NotAMatching)?;
    let mate = m.mates(g);
    for (i, &e) in cut.iter().enumerate() {
        if m.contains(e) != (h[i] == 0) {
            return Ok(false);
        }
        if h[i] == 1 {
            let (v, w) = ctx.split(t, e);
            if rank_of(inst, v, mate[v]) > inst.rk(v, w) {
                return Ok(false);
            }
        }
    }
    Ok(inner_ok(ctx, t, &closure(ctx, t), &mate, mode))
}

/// Table of `t` by enumerating every matching on `E(G[Y_t]) ∪ cut(t)`.
pub fn exhaustive_table(ctx: &DpContext, t: usize, mode: Mode) -> DpTable {
    let inst = ctx.inst;
    let g = inst.graph();
    let cut = ctx.cut(t).to_vec();
    let mut table = DpTable::new(t, cut.clone());
    let edges: Vec<usize> = (0..g.m())
        .filter(|&e| {
            let [a, b] = g.edge(e);
            ctx.in_y(t, a) || ctx.in_y(t, b)
        })
        .collect();
    let clos = closure(ctx, t);
    let mut used = vec![false; g.n()];
    let mut filled = 0;
    let size = table.size();
    for_each_matching(g, &edges, &mut used, &mut Vec::new(), &mut |chosen| {
        let m = Matching::from_edges_unchecked(chosen.to_vec());
        let mate = m.mates(g);
        if !inner_ok(ctx, t, &clos, &mate, mode) {
            return true;
        }
        // Allowed values per cut coordinate.
        let options: Vec<Vec<i8>> = cut
            .iter()
            .map(|&e| {
                if m.contains(e) {
                    vec![0]
                } else {
                    let (v, w) = ctx.split(t, e);
                    if rank_of(inst, v, mate[v]) <= inst.rk(v, w) {
                        vec![-1, 1]
                    } else {
                        vec![-1]
                    }
                }
            })
            .collect();
        let mut h = vec![0i8; cut.len()];
        fill_product(&options, 0, &mut h, &mut |h| {
            if !table.contains(h) {
                table.set(h, Some(m.clone()));
                filled += 1;
            }
        });
        filled < size
    });
    table
}

fn fill_product(options: &[Vec<i8>], i: usize, h: &mut Vec<i8>, f: &mut dyn FnMut(&[i8])) {
    if i == options.len() {
        f(h);
        return;
    }
    for &v in &options[i] {
        h[i] = v;
        fill_product(options, i + 1, h, f);
    }
}

/// Table of a leaf node (its subtree is its own bag).
pub fn leaf_table(ctx: &DpContext, t: usize, mode: Mode) -> DpTable {
    debug_assert!(ctx.info.children[t].is_empty(), "node {t} is not a leaf");
    exhaustive_table(ctx, t, mode)
}
