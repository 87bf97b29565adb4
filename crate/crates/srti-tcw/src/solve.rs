use std::thread;

use srti_model::{is_perfect, is_stable, Instance, Matching};
use srti_graph::TreeCutDecomposition;

use crate::complies::{exhaustive_table, leaf_table};
use crate::context::{DpContext, Mode};
use crate::error::TcwError;
use crate::step::{step_with, NodeData};
use crate::table::{vector_at, DpTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads for nodes at the same depth.
    pub threads: usize,
    /// Enumerate all matchings at every node instead of the induction step.
    pub exhaustive: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { threads: 1, exhaustive: false }
    }
}

/// Table of `t` given its children's tables, closed downward.
pub fn node_table(ctx: &DpContext, t: usize, tables: &[Option<DpTable>], mode: Mode, exhaustive: bool) -> DpTable {
    if exhaustive {
        return exhaustive_table(ctx, t, mode);
    }
    if ctx.info.children[t].is_empty() {
        return leaf_table(ctx, t, mode);
    }
    let nd = NodeData::new(ctx, t, tables);
    let cut = ctx.cut(t).to_vec();
    let len = cut.len();
    let mut table = DpTable::new(t, cut);
    // Descending order: vectors with more 1s come first, so a witness can be
    // inherited from any vector that differs by a single 1 → −1.
    for idx in (0..table.size()).rev() {
        let h = vector_at(idx, len);
        let mut pow = 1;
        let mut inherited = None;
        for &c in &h {
            if c == -1 {
                if let Some(m) = table.entry(idx + 2 * pow) {
                    inherited = Some(m.clone());
                    break;
                }
            }
            pow *= 3;
        }
        let m = inherited.or_else(|| step_with(ctx, &nd, tables, &h, mode));
        table.set(&h, m);
    }
    table
}

/// Tables of every node, computed bottom-up.
pub fn compute_tables(ctx: &DpContext, mode: Mode, opts: SolveOptions) -> Vec<Option<DpTable>> {
    let k = ctx.tcd.len();
    let mut tables: Vec<Option<DpTable>> = vec![None; k];
    let maxd = ctx.info.depth.iter().copied().max().unwrap_or(0);
    for d in (0..=maxd).rev() {
        let level: Vec<usize> = (0..k).filter(|&t| ctx.info.depth[t] == d).collect();
        let done: Vec<(usize, DpTable)> = if opts.threads <= 1 || level.len() <= 1 {
            level.iter().map(|&t| (t, node_table(ctx, t, &tables, mode, opts.exhaustive))).collect()
        } else {
            let chunk = level.len().div_ceil(opts.threads);
            let shared = &tables;
            thread::scope(|s| {
                let handles: Vec<_> = level
                    .chunks(chunk)
                    .map(|ts| {
                        s.spawn(move || {
                            ts.iter()
                                .map(|&t| (t, node_table(ctx, t, shared, mode, opts.exhaustive)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
            })
        };
        for (t, table) in done {
            tables[t] = Some(table);
        }
    }
    tables
}

/// Stable matching (covering everyone for `Mode::Perfect`), if one exists.
pub fn solve(inst: &Instance, tcd: &TreeCutDecomposition, mode: Mode) -> Result<Option<Matching>, TcwError> {
    solve_with(inst, tcd, mode, SolveOptions::default())
}

pub fn solve_with(
    inst: &Instance,
    tcd: &TreeCutDecomposition,
    mode: Mode,
    opts: SolveOptions,
) -> Result<Option<Matching>, TcwError> {
    let ctx = DpContext::new(inst, tcd)?;
    let tables = compute_tables(&ctx, mode, opts);
    let root = tables[tcd.root].as_ref().expect("root table");
    let Some(m) = root.get(&[]).cloned() else { return Ok(None) };
    let ok = match mode {
        Mode::Existence => is_stable(inst, &m),
        Mode::Perfect => is_perfect(inst, &m),
    };
    if !ok.unwrap_or(false) {
        return Err(TcwError::Unverified);
    }
    Ok(Some(m))
}

/// Any stable matching; at least half the size of a maximum one.
pub fn approx_max(inst: &Instance, tcd: &TreeCutDecomposition) -> Result<Option<Matching>, TcwError> {
    solve(inst, tcd, Mode::Existence)
}
