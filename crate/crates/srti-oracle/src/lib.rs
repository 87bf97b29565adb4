//! Exhaustive ground-truth solver and seeded random instances.

mod random;

pub use random::{random_graph, random_instance, random_instance_seeded};

use srti_model::{is_stable_ranks, Graph, Instance, Matching, INF};
use thiserror::Error;

/// The three SRTI tasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveMode {
    Existence,
    Perfect,
    Max,
}

/// Default number of edges above which brute force refuses to run.
pub const DEFAULT_EDGE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{edges} edges exceed the brute-force cap of {cap}; use an FPT solver instead")]
    CapExceeded { edges: usize, cap: usize },
}

/// Every matching of a graph exactly once, in exclude-first depth-first order
/// over the canonical edge order (so the empty matching comes first).
pub struct MatchingIter<'a> {
    g: &'a Graph,
    included: Vec<bool>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

pub fn enumerate_matchings(g: &Graph) -> MatchingIter<'_> {
    MatchingIter {
        g,
        included: vec![false; g.m()],
        used: vec![false; g.n()],
        started: false,
        done: false,
    }
}

impl MatchingIter<'_> {
    /// Advances to the next matching; false when exhausted.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        for i in (0..self.g.m()).rev() {
            let [a, b] = self.g.edge(i);
            if self.included[i] {
                self.included[i] = false;
                self.used[a] = false;
                self.used[b] = false;
            } else if !self.used[a] && !self.used[b] {
                self.included[i] = true;
                self.used[a] = true;
                self.used[b] = true;
                return true;
            }
        }
        false
    }

    fn current(&self) -> Matching {
        Matching::from_edges_unchecked(
            (0..self.g.m()).filter(|&e| self.included[e]).collect(),
        )
    }
}

impl Iterator for MatchingIter<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done || !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.current())
    }
}

fn check_cap(inst: &Instance, cap: usize) -> Result<(), OracleError> {
    let edges = inst.graph().m();
    if edges > cap {
        Err(OracleError::CapExceeded { edges, cap })
    } else {
        Ok(())
    }
}

fn partner_ranks_of(inst: &Instance, m: &Matching) -> Vec<u32> {
    let g = inst.graph();
    let mut pr = vec![INF; inst.n()];
    for &e in m.edges() {
        let [a, b] = g.edge(e);
        pr[a] = inst.rk_edge(e, a);
        pr[b] = inst.rk_edge(e, b);
    }
    pr
}

/// All stable matchings in enumeration order.
pub fn stable_matchings(inst: &Instance, cap: usize) -> Result<Vec<Matching>, OracleError> {
    check_cap(inst, cap)?;
    Ok(enumerate_matchings(inst.graph())
        .filter(|m| is_stable_ranks(inst, &partner_ranks_of(inst, m)))
        .collect())
}

/// Exhaustive solve with the default edge cap.
pub fn brute_solve(inst: &Instance, mode: SolveMode) -> Result<Option<Matching>, OracleError> {
    brute_solve_capped(inst, mode, DEFAULT_EDGE_CAP)
}

/// Exhaustive solve; ties between optimal matchings go to the first enumerated.
pub fn brute_solve_capped(
    inst: &Instance,
    mode: SolveMode,
    cap: usize,
) -> Result<Option<Matching>, OracleError> {
    check_cap(inst, cap)?;
    let mut best: Option<Matching> = None;
    for m in enumerate_matchings(inst.graph()) {
        if let (SolveMode::Perfect, true) = (mode, 2 * m.len() != inst.n()) {
            continue;
        }
        if best.as_ref().is_some_and(|b| b.len() >= m.len()) {
            continue;
        }
        if !is_stable_ranks(inst, &partner_ranks_of(inst, &m)) {
            continue;
        }
        best = Some(m);
        if mode != SolveMode::Max {
            break;
        }
    }
    Ok(best)
}
