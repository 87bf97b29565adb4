//! Clique → Max-SRTI with bounded treedepth and feedback vertex number.

use srti_model::{blocking_pairs, Graph, Instance, Matching};

use crate::emit::Emitter;
use crate::error::GadgetError;
use crate::parts::to_matching;
use crate::source::{arcs, check_clique};

/// Vertex selection gadget `V_i`: paths `c_i, s_i^v, s̄_i^v, c̄_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub c: usize,
    pub cbar: usize,
    /// Indexed by source vertex.
    pub s: Vec<usize>,
    pub sbar: Vec<usize>,
}

/// Consistency triangle `inc(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consistency {
    pub i: usize,
    pub j: usize,
    pub c: usize,
    pub c1: usize,
    pub c2: usize,
}

/// Edge gadget `E^e_ij` for `i < j` and the arc `e = (tail, head)`.
/// Side 0 hangs off `V_i` and `inc(i, j)`, side 1 off `V_j` and `inc(j, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdEdge {
    pub i: usize,
    pub j: usize,
    pub tail: usize,
    pub head: usize,
    /// `[e^1, e^2, e^3, e^4]` per side.
    pub e: [[usize; 4]; 2],
    /// `[p^1, p^2, p^3, p^4]` per side.
    pub p: [[usize; 4]; 2],
}

#[derive(Clone, Debug)]
pub struct TdReduction {
    pub source: Graph,
    pub k: usize,
    pub strict: bool,
    pub instance: Instance,
    pub target: usize,
    /// Feedback vertex set witness `{c_i, c̄_i} ∪ {c_ij}`.
    pub fvs: Vec<usize>,
    /// Elimination forest witness (parent per agent).
    pub elimination: Vec<Option<usize>>,
    pub selection: Vec<Selection>,
    pub consistency: Vec<Consistency>,
    pub edges: Vec<TdEdge>,
}

/// `k(n+1) + 8mk(k−1) + C(k,2)`.
pub fn td_target(n: usize, m: usize, k: usize) -> usize {
    k * (n + 1) + 8 * m * k * (k - 1) + k * (k - 1) / 2
}

/// `2k(n+1) + 3k(k−1) + 16k(k−1)m`.
pub fn td_agent_count(n: usize, m: usize, k: usize) -> usize {
    2 * k * (n + 1) + 3 * k * (k - 1) + 16 * k * (k - 1) * m
}

/// Builds the reduction; `strict` breaks the ties at `c_i`, `c̄_i`
/// (selection vertex first) and at `c_ij` so that every list is strict or a
/// single tie of two.
pub fn gen_td_reduction(g: &Graph, k: usize, strict: bool) -> Result<TdReduction, GadgetError> {
    if k < 2 {
        return Err(GadgetError::SmallK(k));
    }
    let n = g.n();
    let n32 = n as u32;
    let mut em = Emitter::new();
    let mut sel = Vec::with_capacity(k);
    for i in 1..=k {
        let c = em.agent(&format!("vs/{i}/c"))?;
        let cbar = em.agent(&format!("vs/{i}/cbar"))?;
        let mut s = Vec::with_capacity(n);
        let mut sbar = Vec::with_capacity(n);
        for v in 1..=n32 {
            let a = em.agent(&format!("vs/{i}/s{v}"))?;
            let b = em.agent(&format!("vs/{i}/sbar{v}"))?;
            em.edge(c, a, v, 1)?;
            em.edge(a, b, 1, 1)?;
            em.edge(b, cbar, 1, n32 + 1 - v)?;
            em.prefer_first(c, a);
            em.prefer_first(cbar, b);
            s.push(a);
            sbar.push(b);
        }
        sel.push(Selection { c, cbar, s, sbar });
    }
    let mut inc = vec![vec![None; k]; k];
    let mut cons = Vec::with_capacity(k * (k - 1));
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let pre = format!("inc/{}-{}", i + 1, j + 1);
            let c = em.agent(&format!("{pre}/c"))?;
            let c1 = em.agent(&format!("{pre}/c'"))?;
            let c2 = em.agent(&format!("{pre}/c''"))?;
            em.edge(c, c1, 2, 2)?;
            em.edge(c, c2, 3, 1)?;
            em.edge(c1, c2, 1, 2)?;
            inc[i][j] = Some(cons.len());
            cons.push(Consistency { i, j, c, c1, c2 });
        }
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for (tail, head) in arcs(g) {
                let pre = format!("eg/{}-{}/{}-{}", i + 1, j + 1, tail + 1, head + 1);
                let mut e = [[0; 4]; 2];
                let mut p = [[0; 4]; 2];
                for (side, (a, b, v)) in [(i, j, tail), (j, i, head)].into_iter().enumerate() {
                    let tag = if side == 0 { "ij" } else { "ji" };
                    for r in 0..4 {
                        e[side][r] = em.agent(&format!("{pre}/{tag}.e{}", r + 1))?;
                        p[side][r] = em.agent(&format!("{pre}/{tag}.p{}", r + 1))?;
                    }
                    let [e1, e2, e3, e4] = e[side];
                    let [p1, p2, p3, p4] = p[side];
                    em.edge(e1, e2, 1, 1)?;
                    em.edge(e2, e3, 1, 3)?;
                    em.edge(e3, e4, 1, 1)?;
                    em.edge(e3, p3, 2, 2)?;
                    em.edge(p3, p2, 1, 1)?;
                    em.edge(p3, p4, 3, 1)?;
                    em.edge(p2, p1, 1, 1)?;
                    let v = v as u32 + 1;
                    em.edge(e1, sel[a].c, 2, v)?;
                    em.edge(e1, sel[a].cbar, 3, n32 + 1 - v)?;
                    em.edge(e1, cons[inc[a][b].expect("pair")].c, 4, 1)?;
                }
                em.edge(e[0][3], e[1][3], 1, 1)?;
                edges.push(TdEdge { i, j, tail, head, e, p });
            }
        }
    }
    let built = em.build(strict)?;
    let id = |x: usize| built.ids[x];
    let selection: Vec<Selection> = sel
        .iter()
        .map(|s| Selection {
            c: id(s.c),
            cbar: id(s.cbar),
            s: s.s.iter().map(|&x| id(x)).collect(),
            sbar: s.sbar.iter().map(|&x| id(x)).collect(),
        })
        .collect();
    let consistency: Vec<Consistency> = cons
        .iter()
        .map(|c| Consistency { i: c.i, j: c.j, c: id(c.c), c1: id(c.c1), c2: id(c.c2) })
        .collect();
    let edges: Vec<TdEdge> = edges
        .iter()
        .map(|t| TdEdge { e: t.e.map(|s| s.map(id)), p: t.p.map(|s| s.map(id)), ..t.clone() })
        .collect();
    let mut fvs: Vec<usize> = selection.iter().flat_map(|s| [s.c, s.cbar]).collect();
    fvs.extend(consistency.iter().map(|c| c.c));
    fvs.sort_unstable();
    let elimination = elimination_forest(built.instance.n(), &selection, &consistency, &edges);
    Ok(TdReduction {
        source: g.clone(),
        k,
        strict,
        target: td_target(n, g.m(), k),
        instance: built.instance,
        fvs,
        elimination,
        selection,
        consistency,
        edges,
    })
}

/// Chain `c_1, c̄_1, …, c_k, c̄_k`, selection paths below it, and per pair
/// `i < j` the chain `c_ij, c_ji` with the consistency edges and edge
/// gadgets hanging off it (height `2k + 7`).
fn elimination_forest(
    n: usize,
    sel: &[Selection],
    cons: &[Consistency],
    edges: &[TdEdge],
) -> Vec<Option<usize>> {
    let mut parent = vec![None; n];
    let mut last: Option<usize> = None;
    for s in sel {
        for v in [s.c, s.cbar] {
            parent[v] = last;
            last = Some(v);
        }
    }
    for s in sel {
        for (&a, &b) in s.s.iter().zip(&s.sbar) {
            parent[a] = last;
            parent[b] = Some(a);
        }
    }
    let find = |i: usize, j: usize| cons.iter().find(|c| c.i == i && c.j == j).expect("pair");
    for i in 0..sel.len() {
        for j in i + 1..sel.len() {
            let (a, b) = (find(i, j), find(j, i));
            parent[a.c] = last;
            parent[b.c] = Some(a.c);
            for c in [a, b] {
                parent[c.c1] = Some(b.c);
                parent[c.c2] = Some(c.c1);
            }
            for t in edges.iter().filter(|t| t.i == i && t.j == j) {
                let [e1, e2, e3, e4] = t.e[0];
                let [p1, p2, p3, p4] = t.p[0];
                parent[e4] = Some(b.c);
                parent[p3] = Some(e4);
                parent[e2] = Some(p3);
                parent[e1] = Some(e2);
                parent[e3] = Some(e2);
                parent[p2] = Some(p3);
                parent[p1] = Some(p2);
                parent[p4] = Some(p3);
                let [f1, f2, f3, f4] = t.e[1];
                let [q1, q2, q3, q4] = t.p[1];
                parent[f3] = Some(e4);
                parent[f4] = Some(f3);
                parent[f2] = Some(f3);
                parent[f1] = Some(f2);
                parent[q3] = Some(f3);
                parent[q2] = Some(q3);
                parent[q1] = Some(q2);
                parent[q4] = Some(q3);
            }
        }
    }
    parent
}

impl TdReduction {
    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn m(&self) -> usize {
        self.source.m()
    }

    /// `t*` recomputed from the registries.
    pub fn registry_target(&self) -> usize {
        let per_selection: usize = self.selection.iter().map(|s| s.s.len() + 1).sum();
        per_selection + 8 * self.edges.len() + self.consistency.len() / 2
    }

    /// Agent count recomputed from the registries.
    pub fn registry_agents(&self) -> usize {
        let sel: usize = self.selection.iter().map(|s| 2 + 2 * s.s.len()).sum();
        sel + 3 * self.consistency.len() + 16 * self.edges.len()
    }

    /// Key/value summary of the reduction.
    pub fn manifest(&self) -> String {
        let height = srti_graph::elimination_forest_height(self.instance.graph(), &self.elimination)
            .map_or_else(|e| format!("invalid ({e})"), |h| h.to_string());
        format!(
            "kind: clique-td\nn: {}\nm: {}\nk: {}\nstrict: {}\nagents: {}\ntarget: {}\nfvs_size: {}\nelimination_height: {}\ntreedepth_bound: {}\n",
            self.n(),
            self.m(),
            self.k,
            self.strict,
            self.instance.n(),
            self.target,
            self.fvs.len(),
            height,
            2 * self.k + 7
        )
    }
}

/// Stable matching of size `t*` built from a `k`-clique (0-based vertices).
pub fn clique_witness_matching(red: &TdReduction, clique: &[usize]) -> Result<Matching, GadgetError> {
    let x = check_clique(&red.source, red.k, clique)?;
    let mut pairs = Vec::new();
    for (i, s) in red.selection.iter().enumerate() {
        for v in 0..s.s.len() {
            if v == x[i] {
                pairs.push((s.c, s.s[v]));
                pairs.push((s.cbar, s.sbar[v]));
            } else {
                pairs.push((s.s[v], s.sbar[v]));
            }
        }
    }
    for c in &red.consistency {
        pairs.push((c.c1, c.c2));
    }
    for t in &red.edges {
        if t.tail == x[t.i] && t.head == x[t.j] {
            for (side, (a, b)) in [(t.i, t.j), (t.j, t.i)].into_iter().enumerate() {
                let c = red.consistency.iter().find(|c| c.i == a && c.j == b).expect("pair");
                pairs.push((c.c, t.e[side][0]));
                pairs.push((t.e[side][1], t.e[side][2]));
                pairs.push((t.p[side][1], t.p[side][2]));
            }
            pairs.push((t.e[0][3], t.e[1][3]));
        } else {
            for side in 0..2 {
                pairs.push((t.e[side][0], t.e[side][1]));
                pairs.push((t.e[side][2], t.e[side][3]));
                pairs.push((t.p[side][0], t.p[side][1]));
                pairs.push((t.p[side][2], t.p[side][3]));
            }
        }
    }
    let m = to_matching(red.instance.graph(), &pairs)?;
    let bp = blocking_pairs(&red.instance, &m)?;
    if let Some(b) = bp.first() {
        return Err(GadgetError::Witness(format!(
            "blocking pair {{{}, {}}}",
            red.instance.name(b.v),
            red.instance.name(b.w)
        )));
    }
    if m.len() != red.target {
        return Err(GadgetError::Witness(format!("size {} != target {}", m.len(), red.target)));
    }
    Ok(m)
}
