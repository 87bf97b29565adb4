use std::collections::{BTreeMap, HashSet};

use srti_model::{Instance, InstanceBuilder, Matching, INF};

use crate::error::FesError;

/// The instance left after fixing part of the matching on feedback edges.
///
/// `h` keeps the vertices not covered by the fixed edges and every
/// non-feedback edge whose ranks stay within both thresholds; each guarded
/// vertex gets a pendant triangle that forces it to be matched.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub h: Instance,
    /// Original vertex per vertex of `h` (`None` for triangle vertices).
    pub origin: Vec<Option<usize>>,
    /// Threshold per original vertex (`INF` when unconstrained or covered).
    pub alpha: Vec<u32>,
    /// Triangles `[v, v', v'']` in `h`'s indices.
    pub guards: Vec<[usize; 3]>,
    /// Fixed edges, as edge ids of the original instance.
    pub fixed: Vec<usize>,
}

impl ReducedInstance {
    /// Number of guarded vertices.
    pub fn ell(&self) -> usize {
        self.guards.len()
    }
}

#[derive(Clone, Debug)]
pub enum Reduction {
    Reduced(Box<ReducedInstance>),
    /// Two covered vertices already block each other.
    Discard,
}

/// Builds the reduced instance for feedback edges `fes`, fixed edges
/// `fixed ⊆ fes` and endpoint choices `choice` (edge → endpoint that must be
/// matched at least as well as through that edge). Choices for edges
/// touching a covered vertex are optional; every other edge of `fes ∖ fixed`
/// needs one.
pub fn build_reduced(
    inst: &Instance,
    fes: &[usize],
    fixed: &[usize],
    choice: &BTreeMap<usize, usize>,
) -> Result<Reduction, FesError> {
    let g = inst.graph();
    let n = g.n();
    for &e in fes.iter().chain(fixed).chain(choice.keys()) {
        if e >= g.m() {
            return Err(FesError::UnknownEdge(e));
        }
    }
    let fset: HashSet<usize> = fes.iter().copied().collect();
    if let Some(&e) = fixed.iter().find(|e| !fset.contains(e)) {
        return Err(FesError::NotInFeedbackSet(e));
    }
    let m = Matching::new(g, fixed.to_vec()).map_err(|_| FesError::NotAMatching)?;
    let mate = m.mates(g);
    let covered: Vec<bool> = mate.iter().map(Option::is_some).collect();
    let prank = |v: usize| mate[v].map_or(INF, |w| inst.rk(v, w));
    for (e, &[a, b]) in g.edges().iter().enumerate() {
        if covered[a] && covered[b] && !m.contains(e) && inst.rk_edge(e, a) < prank(a) && inst.rk_edge(e, b) < prank(b) {
            return Ok(Reduction::Discard);
        }
    }
    let mut alpha = vec![INF; n];
    for v in 0..n {
        if covered[v] {
            continue;
        }
        for &(w, e) in g.adj(v) {
            if covered[w] && inst.rk_edge(e, w) < prank(w) {
                alpha[v] = alpha[v].min(inst.rk_edge(e, v));
            }
        }
    }
    for &e in fes {
        if m.contains(e) {
            continue;
        }
        let [a, b] = g.edge(e);
        match choice.get(&e) {
            Some(&v) if v != a && v != b => return Err(FesError::NotAnEndpoint { edge: e, vertex: v }),
            Some(&v) => {
                if !covered[v] {
                    let w = if v == a { b } else { a };
                    alpha[v] = alpha[v].min(inst.rk(v, w));
                }
            }
            None if !covered[a] && !covered[b] => return Err(FesError::MissingChoice(e)),
            None => {}
        }
    }
    let mut b = InstanceBuilder::new();
    let mut ids = vec![usize::MAX; n];
    for v in 0..n {
        if !covered[v] {
            ids[v] = b.agent(inst.name(v));
        }
    }
    for (e, &[x, y]) in g.edges().iter().enumerate() {
        if covered[x] || covered[y] || fset.contains(&e) {
            continue;
        }
        let (rx, ry) = (inst.rk_edge(e, x), inst.rk_edge(e, y));
        if rx <= alpha[x] && ry <= alpha[y] {
            b.edge(ids[x], ids[y], rx, ry).expect("simple graph");
        }
    }
    let taken: HashSet<&str> = inst.names().iter().map(String::as_str).collect();
    let fresh = |base: String| {
        let mut s = base;
        while taken.contains(s.as_str()) {
            s.push('\'');
        }
        s
    };
    let mut triples = Vec::new();
    for v in 0..n {
        if covered[v] || alpha[v] == INF {
            continue;
        }
        let p1 = b.agent(&fresh(format!("{}'", inst.name(v))));
        let p2 = b.agent(&fresh(format!("{}''", inst.name(v))));
        b.edge(p1, ids[v], 1, alpha[v] + 2).expect("fresh vertex");
        b.edge(p2, ids[v], 2, alpha[v] + 1).expect("fresh vertex");
        b.edge(p1, p2, 2, 1).expect("fresh vertex");
        triples.push([b.name(ids[v]).to_string(), b.name(p1).to_string(), b.name(p2).to_string()]);
    }
    let h = b.build().expect("generated names are valid");
    let mut origin = vec![None; h.n()];
    for v in 0..n {
        if !covered[v] {
            origin[h.id(inst.name(v)).expect("kept vertex")] = Some(v);
        }
    }
    let guards = triples.iter().map(|t| [0, 1, 2].map(|i| h.id(&t[i]).expect("guard vertex"))).collect();
    let mut fixed = fixed.to_vec();
    fixed.sort_unstable();
    Ok(Reduction::Reduced(Box::new(ReducedInstance { h, origin, alpha, guards, fixed })))
}
