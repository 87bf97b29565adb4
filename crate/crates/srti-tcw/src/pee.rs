use srti_model::INF;
use srti_twosat::{Lit, TwoSatFormula};
use thiserror::Error;

use crate::table::HVector;

/// What is known about a bag vertex's partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeeStatus {
    /// Partner fixed, with this rank.
    Matched(u32),
    Unmatched,
    /// Matched into a bad class; rank decided by the formula.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeeVertex {
    pub maxrk: u32,
    pub status: PeeStatus,
}

/// A coordinate of a child vector: matched edge, or −1 exactly when the
/// vertex's partner rank is at most `rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    Zero,
    Rank { vertex: usize, rank: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeeChild {
    pub coords: Vec<Coord>,
    pub allowed: Vec<HVector>,
}

/// Rank trade-off of a bad class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BadChain {
    /// `x` takes rank `points[p].0` only if `y`'s rank is at most `points[p].1`.
    Single { x: usize, y: usize, points: Vec<(u32, u32)> },
    /// `x` and `y` take ranks `points[p]` together (first increasing, second decreasing).
    Double { x: usize, y: usize, points: Vec<(u32, u32)> },
}

/// Abstract extension problem: vertices are referred to by index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeeInput {
    pub vertices: Vec<PeeVertex>,
    pub perfect: bool,
    /// `(v, θ)`: the partner of `v` has rank at most `θ`.
    pub caps: Vec<(usize, u32)>,
    /// Unmatched edges between bag vertices, as `(v, rank at v)` pairs.
    pub xt_edges: Vec<((usize, u32), (usize, u32))>,
    pub children: Vec<PeeChild>,
    pub bad: Vec<BadChain>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PeeError {
    #[error("constraints are contradictory: {0}")]
    Contradiction(String),
}

/// Formula plus the map between variables `x^v_j` and indices.
#[derive(Clone, Debug)]
pub struct PeeFormula {
    pub formula: TwoSatFormula,
    offset: Vec<usize>,
    maxrk: Vec<u32>,
}

impl PeeFormula {
    /// Variable "`v`'s partner has rank worse than `j`" (1 ≤ j ≤ maxrk).
    pub fn var(&self, v: usize, j: u32) -> Lit {
        assert!(j >= 1 && j <= self.maxrk[v]);
        Lit::pos(self.offset[v] + j as usize - 1)
    }

    /// Vertex and threshold of each variable.
    pub fn var_names(&self) -> Vec<(usize, u32)> {
        (0..self.maxrk.len()).flat_map(|v| (1..=self.maxrk[v]).map(move |j| (v, j))).collect()
    }

    /// Partner rank per vertex: the first threshold set false, `INF` if none.
    pub fn decode(&self, assignment: &[bool]) -> Vec<u32> {
        (0..self.maxrk.len())
            .map(|v| (1..=self.maxrk[v]).find(|&j| !assignment[self.offset[v] + j as usize - 1]).unwrap_or(INF))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    Const(bool),
    Lit(Lit),
}

impl Term {
    fn not(self) -> Term {
        match self {
            Term::Const(b) => Term::Const(!b),
            Term::Lit(l) => Term::Lit(l.negate()),
        }
    }
}

struct Builder<'a> {
    input: &'a PeeInput,
    out: PeeFormula,
}

impl Builder<'_> {
    /// "partner rank of `v` > `j`", with known statuses folded in.
    fn gt(&self, v: usize, j: u32) -> Term {
        if j == 0 {
            return Term::Const(true);
        }
        if j == INF {
            return Term::Const(false);
        }
        match self.input.vertices[v].status {
            PeeStatus::Matched(p) => Term::Const(p > j),
            PeeStatus::Unmatched => Term::Const(true),
            PeeStatus::Free if j > self.out.maxrk[v] => Term::Const(false),
            PeeStatus::Free => Term::Lit(self.out.var(v, j)),
        }
    }

    fn clause(&mut self, a: Term, b: Term, why: &str) -> Result<(), PeeError> {
        match (a, b) {
            (Term::Const(true), _) | (_, Term::Const(true)) => Ok(()),
            (Term::Const(false), Term::Const(false)) => Err(PeeError::Contradiction(why.to_string())),
            (Term::Lit(l), Term::Const(false)) | (Term::Const(false), Term::Lit(l)) => {
                self.out.formula.add_unit(l);
                Ok(())
            }
            (Term::Lit(l), Term::Lit(m)) => {
                self.out.formula.add_clause(l, m);
                Ok(())
            }
        }
    }

    fn unit(&mut self, a: Term, why: &str) -> Result<(), PeeError> {
        self.clause(a, Term::Const(false), why)
    }

    fn child(&mut self, c: &PeeChild) -> Result<(), PeeError> {
        let mut vars: Vec<Lit> = Vec::new();
        let mut fixed = vec![0i8; c.coords.len()];
        let mut which = vec![usize::MAX; c.coords.len()];
        for (i, coord) in c.coords.iter().enumerate() {
            match *coord {
                Coord::Zero => fixed[i] = 0,
                Coord::Rank { vertex, rank } => match self.gt(vertex, rank) {
                    Term::Const(b) => fixed[i] = if b { 1 } else { -1 },
                    Term::Lit(l) => {
                        which[i] = vars.iter().position(|&u| u == l).unwrap_or_else(|| {
                            vars.push(l);
                            vars.len() - 1
                        })
                    }
                },
            }
        }
        assert!(vars.len() <= 2, "child constraints involve at most two variables");
        let vector = |mask: usize| -> HVector {
            (0..c.coords.len())
                .map(|i| if which[i] == usize::MAX { fixed[i] } else if mask >> which[i] & 1 == 1 { 1 } else { -1 })
                .collect()
        };
        let forbidden: Vec<usize> = (0..1usize << vars.len()).filter(|&m| !c.allowed.contains(&vector(m))).collect();
        if vars.is_empty() {
            return if forbidden.is_empty() { Ok(()) } else { Err(PeeError::Contradiction("child vector".into())) };
        }
        // forced[i] = value variable i must take, if any.
        let mut forced: Vec<Option<bool>> = vec![None; vars.len()];
        for (i, f) in forced.iter_mut().enumerate() {
            for b in [false, true] {
                let all_bad = (0..1usize << vars.len())
                    .filter(|m| (m >> i & 1 == 1) == b)
                    .all(|m| forbidden.contains(&m));
                if all_bad {
                    if f.is_some() {
                        return Err(PeeError::Contradiction("child vector".into()));
                    }
                    *f = Some(!b);
                }
            }
        }
        for (i, f) in forced.iter().enumerate() {
            if let Some(b) = f {
                let l = if *b { vars[i] } else { vars[i].negate() };
                self.out.formula.add_unit(l);
            }
        }
        for &m in &forbidden {
            let covered = forced.iter().enumerate().any(|(i, f)| f.is_some_and(|b| (m >> i & 1 == 1) != b));
            if covered {
                continue;
            }
            let lits: Vec<Lit> = (0..vars.len())
                .map(|i| if m >> i & 1 == 1 { vars[i].negate() } else { vars[i] })
                .collect();
            match lits.as_slice() {
                [a] => self.out.formula.add_unit(*a),
                [a, b] => self.out.formula.add_clause(*a, *b),
                _ => unreachable!(),
            }
        }
        Ok(())
    }

    /// Restricts `v`'s rank to the sorted set `ranks`.
    fn promote(&mut self, v: usize, ranks: &[u32]) -> Result<(), PeeError> {
        let (first, last) = (ranks[0], ranks[ranks.len() - 1]);
        if first >= 2 {
            self.unit(self.gt(v, first - 1), "rank below chain")?;
        }
        self.unit(self.gt(v, last).not(), "rank above chain")?;
        for w in ranks.windows(2) {
            for j in w[0] + 1..w[1] {
                let (a, b) = (self.gt(v, j), self.gt(v, w[0]));
                self.clause(a.not(), b, "promotion")?;
                self.clause(a, b.not(), "promotion")?;
            }
        }
        Ok(())
    }
}

/// Builds the 2-CNF formula of an extension problem. Variables `x^v_j`
/// (1 ≤ j ≤ maxrk) mean "the partner of `v` has rank worse than `j`".
/// Known vertices keep their variables (pinned by unit clauses) but are
/// substituted as constants inside all other constraints.
pub fn build_pee_2sat(input: &PeeInput) -> Result<PeeFormula, PeeError> {
    let mut offset = Vec::with_capacity(input.vertices.len());
    let mut total = 0;
    for v in &input.vertices {
        offset.push(total);
        total += v.maxrk as usize;
    }
    let maxrk = input.vertices.iter().map(|v| v.maxrk).collect();
    let mut b = Builder { input, out: PeeFormula { formula: TwoSatFormula::new(total), offset, maxrk } };
    for (v, vert) in input.vertices.iter().enumerate() {
        for j in 1..vert.maxrk {
            let (l, m) = (b.out.var(v, j), b.out.var(v, j + 1));
            b.out.formula.add_clause(l, m.negate());
        }
        match vert.status {
            PeeStatus::Matched(p) => {
                if p >= 2 && p - 1 <= vert.maxrk {
                    let l = b.out.var(v, p - 1);
                    b.out.formula.add_unit(l);
                }
                if p <= vert.maxrk {
                    let l = b.out.var(v, p);
                    b.out.formula.add_unit(l.negate());
                }
            }
            PeeStatus::Unmatched => {
                if input.perfect {
                    return Err(PeeError::Contradiction(format!("vertex {v} must be matched")));
                }
                for j in 1..=vert.maxrk {
                    let l = b.out.var(v, j);
                    b.out.formula.add_unit(l);
                }
            }
            PeeStatus::Free => {
                if vert.maxrk == 0 {
                    return Err(PeeError::Contradiction(format!("vertex {v} has no partner")));
                }
                let l = b.out.var(v, vert.maxrk);
                b.out.formula.add_unit(l.negate());
            }
        }
    }
    for &(v, theta) in &input.caps {
        b.unit(b.gt(v, theta).not(), "rank cap")?;
    }
    for &((x, a), (y, c)) in &input.xt_edges {
        b.clause(b.gt(x, a).not(), b.gt(y, c).not(), "bag edge")?;
    }
    for c in &input.children {
        b.child(c)?;
    }
    for chain in &input.bad {
        match chain {
            BadChain::Single { x, y, points } => {
                for &(r, l) in points {
                    b.clause(b.gt(*x, r), b.gt(*y, l).not(), "one-sided chain")?;
                }
                let rs: Vec<u32> = points.iter().map(|p| p.0).collect();
                b.promote(*x, &rs)?;
            }
            BadChain::Double { x, y, points } => {
                for w in points.windows(2) {
                    b.clause(b.gt(*x, w[0].0), b.gt(*y, w[1].1), "two-sided chain")?;
                }
                let rs: Vec<u32> = points.iter().map(|p| p.0).collect();
                let mut ss: Vec<u32> = points.iter().map(|p| p.1).collect();
                ss.reverse();
                b.promote(*x, &rs)?;
                b.promote(*y, &ss)?;
            }
        }
    }
    Ok(b.out)
}
