//! 2-SAT via strongly connected components of the implication graph.

use std::fmt;

use thiserror::Error;

/// A literal: variable index plus polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit(2 * var as u32)
    }

    pub fn neg(var: usize) -> Lit {
        Lit(2 * var as u32 + 1)
    }

    pub fn new(var: usize, positive: bool) -> Lit {
        if positive {
            Lit::pos(var)
        } else {
            Lit::neg(var)
        }
    }

    pub fn var(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var()] == self.is_positive()
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_positive() { "" } else { "!" };
        write!(f, "{sign}x{}", self.var())
    }
}

/// A conjunction of clauses with at most two literals; units are stored as `(l, l)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    n_vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoSatError {
    #[error("{vars} variables exceed the exhaustive cap of {cap}")]
    TooManyVars { vars: usize, cap: usize },
}

impl TwoSatFormula {
    pub fn new(n_vars: usize) -> Self {
        TwoSatFormula { n_vars, clauses: Vec::new() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Adds a fresh variable and returns its index.
    pub fn add_var(&mut self) -> usize {
        self.n_vars += 1;
        self.n_vars - 1
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        assert!(a.var() < self.n_vars && b.var() < self.n_vars, "literal out of range");
        self.clauses.push((a, b));
    }

    pub fn add_unit(&mut self, a: Lit) {
        self.add_clause(a, a);
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    /// Clauses as a sorted, deduplicated set with ordered literal pairs.
    pub fn clause_set(&self) -> Vec<(Lit, Lit)> {
        let mut out: Vec<(Lit, Lit)> =
            self.clauses.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|&(a, b)| a.eval(assignment) || b.eval(assignment))
    }
}

/// Satisfying assignment, or `None` when unsatisfiable. Linear time.
pub fn solve(f: &TwoSatFormula) -> Option<Vec<bool>> {
    let nodes = 2 * f.n_vars;
    let mut head = vec![usize::MAX; nodes];
    let mut next = Vec::with_capacity(2 * f.clauses.len());
    let mut to = Vec::with_capacity(2 * f.clauses.len());
    let mut add = |u: usize, v: usize, head: &mut Vec<usize>| {
        to.push(v);
        next.push(head[u]);
        head[u] = to.len() - 1;
    };
    for &(a, b) in &f.clauses {
        add(a.negate().code(), b.code(), &mut head);
        add(b.negate().code(), a.code(), &mut head);
    }
    let comp = tarjan(nodes, &head, &next, &to);
    let mut out = vec![false; f.n_vars];
    for (v, slot) in out.iter_mut().enumerate() {
        let (p, n) = (comp[2 * v], comp[2 * v + 1]);
        if p == n {
            return None;
        }
        // Components are numbered in reverse topological order.
        *slot = p < n;
    }
    Some(out)
}

fn tarjan(nodes: usize, head: &[usize], next: &[usize], to: &[usize]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; nodes];
    let mut low = vec![0; nodes];
    let mut comp = vec![UNSEEN; nodes];
    let mut on_stack = vec![false; nodes];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let (mut counter, mut comps) = (0, 0);
    for s in 0..nodes {
        if index[s] != UNSEEN {
            continue;
        }
        index[s] = counter;
        low[s] = counter;
        counter += 1;
        stack.push(s);
        on_stack[s] = true;
        call.push((s, head[s]));
        while let Some(&mut (u, ref mut it)) = call.last_mut() {
            if *it != usize::MAX {
                let v = to[*it];
                *it = next[*it];
                if index[v] == UNSEEN {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, head[v]));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == u {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}

/// Default variable cap of the exhaustive oracle.
pub const BRUTE_VAR_CAP: usize = 22;

/// Exhaustive search over all assignments (test oracle).
pub fn brute_assignments(f: &TwoSatFormula) -> Result<Option<Vec<bool>>, TwoSatError> {
    if f.n_vars > BRUTE_VAR_CAP {
        return Err(TwoSatError::TooManyVars { vars: f.n_vars, cap: BRUTE_VAR_CAP });
    }
    let mut a = vec![false; f.n_vars];
    for mask in 0u64..(1u64 << f.n_vars) {
        for (i, slot) in a.iter_mut().enumerate() {
            *slot = mask >> i & 1 == 1;
        }
        if f.satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
