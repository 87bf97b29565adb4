//! Maximum stable matchings for instances whose acceptability graph is a
//! few edges away from a forest: branch on the matching restricted to a
//! feedback edge set, then solve a forest-like reduced instance per branch.

mod error;
mod forest;
mod reduce;

use std::collections::BTreeMap;

use srti_graph::feedback_edge_set;
use srti_model::{is_stable, Instance, Matching};

pub use error::FesError;
pub use forest::solve_reduced_max;
pub use reduce::{build_reduced, ReducedInstance, Reduction};

/// Branch counters of one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FesStats {
    pub feedback_edges: usize,
    /// Matchings inside the feedback edge set.
    pub fixed_sets: usize,
    pub discarded: usize,
    /// Reduced instances built and solved.
    pub branches: usize,
}

/// Maximum stable matching, or `None` if no stable matching exists.
pub fn fes_max(inst: &Instance) -> Result<Option<Matching>, FesError> {
    fes_max_with_stats(inst).map(|r| r.0)
}

pub fn fes_max_with_stats(inst: &Instance) -> Result<(Option<Matching>, FesStats), FesError> {
    let g = inst.graph();
    let fes = feedback_edge_set(g);
    let mut stats = FesStats { feedback_edges: fes.len(), ..FesStats::default() };
    let mut best: Option<Matching> = None;
    let mut fixed = Vec::new();
    let mut used = vec![false; g.n()];
    subsets(g, &fes, 0, &mut used, &mut fixed, &mut |fixed| {
        stats.fixed_sets += 1;
        let open: Vec<usize> = fes
            .iter()
            .copied()
            .filter(|&e| !fixed.contains(&e) && g.edge(e).iter().all(|&v| !fixed.iter().any(|&f| g.edge(f).contains(&v))))
            .collect();
        for mask in 0u64..1 << open.len() {
            let choice: BTreeMap<usize, usize> =
                open.iter().enumerate().map(|(i, &e)| (e, g.edge(e)[(mask >> i & 1) as usize])).collect();
            let red = match build_reduced(inst, &fes, fixed, &choice)? {
                Reduction::Discard => {
                    stats.discarded += 1;
                    break;
                }
                Reduction::Reduced(r) => r,
            };
            stats.branches += 1;
            let Some(m) = solve_reduced_max(&red)? else { continue };
            let lifted = lift(inst, &red, &m);
            debug_assert_eq!(lifted.len() + red.ell(), m.len() + red.fixed.len());
            if !is_stable(inst, &lifted).unwrap_or(false) {
                return Err(FesError::Unverified);
            }
            if best.as_ref().is_none_or(|b| lifted.len() > b.len()) {
                best = Some(lifted);
            }
        }
        Ok(())
    })?;
    debug_assert!(stats.branches <= 1usize << (2 * fes.len()));
    Ok((best, stats))
}

/// Fixed edges plus the forest part of a reduced solution, in original ids.
pub fn lift(inst: &Instance, red: &ReducedInstance, m: &Matching) -> Matching {
    let hg = red.h.graph();
    let mut edges = red.fixed.clone();
    for &e in m.edges() {
        let [a, b] = hg.edge(e);
        if let (Some(x), Some(y)) = (red.origin[a], red.origin[b]) {
            edges.push(inst.graph().edge_between(x, y).expect("kept edge"));
        }
    }
    Matching::from_edges_unchecked(edges)
}

fn subsets(
    g: &srti_model::Graph,
    fes: &[usize],
    i: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<(), FesError>,
) -> Result<(), FesError> {
    if i == fes.len() {
        return f(chosen);
    }
    subsets(g, fes, i + 1, used, chosen, f)?;
    let [a, b] = g.edge(fes[i]);
    if !used[a] && !used[b] {
        used[a] = true;
        used[b] = true;
        chosen.push(fes[i]);
        subsets(g, fes, i + 1, used, chosen, f)?;
        chosen.pop();
        used[a] = false;
        used[b] = false;
    }
    Ok(())
}
