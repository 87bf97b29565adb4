use srti_graph::ChildKind;
use srti_model::{Matching, INF};
use srti_twosat::solve as solve_2sat;

use crate::classes::{classify_class, class_front, light_classes, ClassKind, ClassOption, ClassPartition, NodeMatching};
use crate::complies::{complies, for_each_matching};
use crate::context::{DpContext, Mode};
use crate::pee::{build_pee_2sat, BadChain, Coord, PeeChild, PeeInput, PeeStatus, PeeVertex};
use crate::table::{DpTable, HVector};

const UNSET: i8 = 2;
const NONE: usize = usize::MAX;

/// Per-node data shared by all vectors of the node.
pub(crate) struct NodeData {
    t: usize,
    bag: Vec<usize>,
    bagpos: Vec<usize>,
    /// Child whose subtree holds each vertex.
    sub: Vec<usize>,
    heavy: Vec<usize>,
    /// Index into `heavy` per node.
    hpos: Vec<usize>,
    /// Light children without cut edges.
    free_light: Vec<usize>,
    /// Edges between the bag and a heavy child, or between two heavy children.
    hedges: Vec<usize>,
    /// Edges inside the bag.
    xedges: Vec<usize>,
    part: ClassPartition,
}

impl NodeData {
    pub(crate) fn new(ctx: &DpContext, t: usize, tables: &[Option<DpTable>]) -> NodeData {
        let g = ctx.inst.graph();
        let bag = ctx.tcd.bags[t].clone();
        let mut bagpos = vec![NONE; g.n()];
        for (i, &v) in bag.iter().enumerate() {
            bagpos[v] = i;
        }
        let mut sub = vec![NONE; g.n()];
        let mut heavy = Vec::new();
        let mut hpos = vec![NONE; ctx.tcd.len()];
        let mut free_light = Vec::new();
        for &c in &ctx.info.children[t] {
            for &v in &ctx.info.y[c] {
                sub[v] = c;
            }
            if ctx.kinds[c] == Some(ChildKind::Heavy) {
                hpos[c] = heavy.len();
                heavy.push(c);
            } else if ctx.info.adh(c) == 0 {
                free_light.push(c);
            }
        }
        let (mut hedges, mut xedges) = (Vec::new(), Vec::new());
        for (e, &[a, b]) in g.edges().iter().enumerate() {
            if !ctx.in_y(t, a) || !ctx.in_y(t, b) {
                continue;
            }
            match (bagpos[a] != NONE, bagpos[b] != NONE) {
                (true, true) => xedges.push(e),
                (true, false) | (false, true) => {
                    let v = if bagpos[a] == NONE { a } else { b };
                    if hpos[sub[v]] != NONE {
                        hedges.push(e);
                    }
                }
                (false, false) => {
                    if sub[a] != sub[b] {
                        debug_assert!(hpos[sub[a]] != NONE && hpos[sub[b]] != NONE);
                        hedges.push(e);
                    }
                }
            }
        }
        let part = light_classes(ctx, t, tables);
        NodeData { t, bag, bagpos, sub, heavy, hpos, free_light, hedges, xedges, part }
    }
}

/// Partial matching built while searching.
#[derive(Clone)]
struct State {
    mate: Vec<Option<usize>>,
    edges: Vec<usize>,
    /// Vector per heavy child; `UNSET` marks undecided coordinates.
    hvec: Vec<HVector>,
    /// `(bag position, θ)`: that vertex's partner has rank at most θ.
    caps: Vec<(usize, u32)>,
}

/// A member of the heavy-children family: edges matching into heavy
/// children and one vector per heavy child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyChoice {
    pub edges: Vec<usize>,
    pub vectors: Vec<HVector>,
}

struct Search<'a, 'b> {
    ctx: &'a DpContext<'b>,
    nd: &'a NodeData,
    tables: &'a [Option<DpTable>],
    h: &'a [i8],
    mode: Mode,
}

impl Search<'_, '_> {
    fn table(&self, c: usize) -> &DpTable {
        self.tables[c].as_ref().expect("child table computed")
    }

    fn rank(&self, v: usize, mate: Option<usize>) -> u32 {
        mate.map_or(INF, |w| self.ctx.inst.rk(v, w))
    }

    fn coord(&self, e: usize, v: usize) -> Option<(usize, usize)> {
        let c = self.nd.sub[v];
        if c == NONE || self.nd.hpos[c] == NONE {
            return None;
        }
        let i = self.ctx.cut(c).binary_search(&e).expect("edge leaves the child");
        Some((self.nd.hpos[c], i))
    }

    fn add_edge(&self, st: &mut State, e: usize) {
        let [a, b] = self.ctx.inst.graph().edge(e);
        st.mate[a] = Some(b);
        st.mate[b] = Some(a);
        st.edges.push(e);
        for v in [a, b] {
            if let Some((k, i)) = self.coord(e, v) {
                st.hvec[k][i] = 0;
            }
        }
    }

    /// Whether some completion of the undecided coordinates can be present.
    /// Only valid once every matched edge is fixed: undecided coordinates
    /// then become ±1, and tables are closed under 1 → −1.
    fn heavy_present(&self, hvec: &[HVector]) -> bool {
        self.nd.heavy.iter().zip(hvec).all(|(&c, v)| {
            let low: Vec<i8> = v.iter().map(|&x| if x == UNSET { -1 } else { x }).collect();
            self.table(c).contains(&low)
        })
    }

    /// Applies the vector's matched edges and promises.
    fn start(&self) -> Option<State> {
        let (ctx, nd) = (self.ctx, self.nd);
        let inst = ctx.inst;
        let g = inst.graph();
        let cut = ctx.cut(nd.t);
        let mut st = State {
            mate: vec![None; g.n()],
            edges: Vec::new(),
            hvec: nd.heavy.iter().map(|&c| vec![UNSET; ctx.info.adh(c)]).collect(),
            caps: Vec::new(),
        };
        for (i, &e) in cut.iter().enumerate() {
            if self.h[i] == 0 {
                let [a, b] = g.edge(e);
                if st.mate[a].is_some() || st.mate[b].is_some() {
                    return None;
                }
                self.add_edge(&mut st, e);
            }
        }
        // Two matched outside vertices must not block each other.
        for (i, &e) in cut.iter().enumerate() {
            if self.h[i] != 0 {
                continue;
            }
            let w = ctx.split(nd.t, e).1;
            for &(w2, e2) in g.adj(w) {
                if w < w2 && !ctx.in_y(nd.t, w2) && st.mate[w2].is_some() {
                    let blocking = inst.rk_edge(e2, w) < self.rank(w, st.mate[w])
                        && inst.rk_edge(e2, w2) < self.rank(w2, st.mate[w2]);
                    if blocking {
                        return None;
                    }
                }
            }
        }
        for (i, &e) in cut.iter().enumerate() {
            if self.h[i] == 0 {
                continue;
            }
            let (v, w) = ctx.split(nd.t, e);
            let need = self.h[i] == 1 || st.mate[w].is_some_and(|m| inst.rk(w, m) > inst.rk(w, v));
            if nd.bagpos[v] != NONE {
                if need {
                    st.caps.push((nd.bagpos[v], inst.rk(v, w)));
                }
            } else {
                let (k, j) = self.coord(e, v).expect("cut edge of a light child");
                st.hvec[k][j] = if need { 1 } else { -1 };
            }
        }
        Some(st)
    }

    /// Enumerates matchings on heavy edges, then inside the bag.
    fn run(&self) -> Option<Matching> {
        let nd = self.nd;
        if nd.part.no_instance || nd.free_light.iter().any(|&c| !self.table(c).contains(&[])) {
            return None;
        }
        let st = self.start()?;
        let g = self.ctx.inst.graph();
        let mut found = None;
        let mut used: Vec<bool> = st.mate.iter().map(Option::is_some).collect();
        for_each_matching(g, &nd.hedges, &mut used, &mut Vec::new(), &mut |p| {
            let mut s1 = st.clone();
            for &e in p {
                self.add_edge(&mut s1, e);
            }
            if !self.heavy_present(&s1.hvec) {
                return true;
            }
            let mut used2: Vec<bool> = s1.mate.iter().map(Option::is_some).collect();
            for_each_matching(g, &nd.xedges, &mut used2, &mut Vec::new(), &mut |q| {
                let mut s2 = s1.clone();
                for &e in q {
                    self.add_edge(&mut s2, e);
                }
                let free: Vec<usize> = nd.bag.iter().copied().filter(|&x| s2.mate[x].is_none()).collect();
                found = self.assign(&s2, &free, 0, &mut NodeMatching::default());
                found.is_none()
            });
            found.is_none()
        });
        found
    }

    /// Chooses a class (or none) for every unmatched bag vertex.
    fn assign(&self, st: &State, free: &[usize], i: usize, nm: &mut NodeMatching) -> Option<Matching> {
        let Some(&x) = free.get(i) else {
            return self.with_classes(st, nm);
        };
        if self.mode == Mode::Existence {
            if let Some(m) = self.assign(st, free, i + 1, nm) {
                return Some(m);
            }
        }
        for (ci, class) in self.nd.part.classes.iter().enumerate() {
            if class.nbrs.contains(&x) {
                nm.pairs.insert(x, ci);
                let r = self.assign(st, free, i + 1, nm);
                nm.pairs.remove(&x);
                if r.is_some() {
                    return r;
                }
            }
        }
        None
    }

    fn with_classes(&self, st: &State, nm: &NodeMatching) -> Option<Matching> {
        let mut good = Vec::new();
        let mut bad = Vec::new();
        for (ci, class) in self.nd.part.classes.iter().enumerate() {
            let kind = classify_class(class, ci, nm);
            if kind == ClassKind::Unmatched {
                continue;
            }
            let front = class_front(class, ci, nm);
            if front.is_empty() {
                return None;
            }
            if kind == ClassKind::Good {
                good.push((ci, front));
            } else {
                debug_assert!(is_monotone(&front));
                bad.push((ci, front));
            }
        }
        self.good_product(st, nm, &good, &mut Vec::new(), &bad)
    }

    fn good_product(
        &self,
        st: &State,
        nm: &NodeMatching,
        good: &[(usize, Vec<ClassOption>)],
        chosen: &mut Vec<(usize, ClassOption)>,
        bad: &[(usize, Vec<ClassOption>)],
    ) -> Option<Matching> {
        let Some((ci, front)) = good.get(chosen.len()) else {
            return self.embed(st, nm, chosen, bad);
        };
        for o in front {
            chosen.push((*ci, o.clone()));
            let r = self.good_product(st, nm, good, chosen, bad);
            chosen.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }

    fn statuses(&self, st: &State, nm: &NodeMatching, chosen: &[(usize, ClassOption)]) -> Vec<PeeStatus> {
        self.nd
            .bag
            .iter()
            .map(|&x| {
                if st.mate[x].is_some() {
                    return PeeStatus::Matched(self.rank(x, st.mate[x]));
                }
                for (_, o) in chosen {
                    if o.x == x {
                        return PeeStatus::Matched(o.x_rank);
                    }
                    if o.y == Some(x) && o.matched.len() == 2 {
                        return PeeStatus::Matched(o.y_rank);
                    }
                }
                if nm.of(x).is_some() {
                    PeeStatus::Free
                } else {
                    PeeStatus::Unmatched
                }
            })
            .collect()
    }

    /// Completes heavy vectors for fixed statuses; `f` returns false to stop.
    fn phase2(&self, st: &State, stat: &[PeeStatus], f: &mut dyn FnMut(&[HVector], &[(usize, u32)]) -> bool) -> bool {
        let inst = self.ctx.inst;
        let g = inst.graph();
        let nd = self.nd;
        let mut hv = st.hvec.clone();
        let mut groups: Vec<(usize, Vec<(usize, usize, u32)>)> = Vec::new();
        let mut orients = Vec::new();
        for &e in &nd.hedges {
            let [a, b] = g.edge(e);
            if st.mate[a] == Some(b) {
                continue;
            }
            if nd.bagpos[a] != NONE || nd.bagpos[b] != NONE {
                let (x, v) = if nd.bagpos[a] != NONE { (a, b) } else { (b, a) };
                let (k, i) = self.coord(e, v).expect("heavy endpoint");
                let r = inst.rk(x, v);
                let px = nd.bagpos[x];
                match stat[px] {
                    PeeStatus::Matched(p) => hv[k][i] = if p <= r { -1 } else { 1 },
                    PeeStatus::Unmatched => hv[k][i] = 1,
                    PeeStatus::Free => match groups.iter_mut().find(|gr| gr.0 == px) {
                        Some(gr) => gr.1.push((k, i, r)),
                        None => groups.push((px, vec![(k, i, r)])),
                    },
                }
            } else {
                orients.push((self.coord(e, a).unwrap(), self.coord(e, b).unwrap()));
            }
        }
        if !self.heavy_present(&hv) {
            return true;
        }
        self.phase2_rec(&mut hv, &groups, &orients, 0, &mut st.caps.clone(), f)
    }

    #[allow(clippy::type_complexity)]
    fn phase2_rec(
        &self,
        hv: &mut Vec<HVector>,
        groups: &[(usize, Vec<(usize, usize, u32)>)],
        orients: &[((usize, usize), (usize, usize))],
        i: usize,
        caps: &mut Vec<(usize, u32)>,
        f: &mut dyn FnMut(&[HVector], &[(usize, u32)]) -> bool,
    ) -> bool {
        if i < groups.len() {
            let (px, members) = &groups[i];
            let mut thetas: Vec<u32> = members.iter().map(|m| m.2).collect();
            thetas.sort_unstable();
            thetas.dedup();
            thetas.push(INF);
            for theta in thetas {
                for &(k, j, r) in members {
                    hv[k][j] = if r >= theta { -1 } else { 1 };
                }
                if theta != INF {
                    caps.push((*px, theta));
                }
                let go = !self.heavy_present(hv) || self.phase2_rec(hv, groups, orients, i + 1, caps, f);
                if theta != INF {
                    caps.pop();
                }
                if !go {
                    return false;
                }
            }
            for &(k, j, _) in members {
                hv[k][j] = UNSET;
            }
            return true;
        }
        let o = i - groups.len();
        if o < orients.len() {
            let ((ka, ia), (kb, ib)) = orients[o];
            for (va, vb) in [(1, -1), (-1, 1)] {
                hv[ka][ia] = va;
                hv[kb][ib] = vb;
                if self.heavy_present(hv) && !self.phase2_rec(hv, groups, orients, i + 1, caps, f) {
                    return false;
                }
            }
            hv[ka][ia] = UNSET;
            hv[kb][ib] = UNSET;
            return true;
        }
        debug_assert!(hv.iter().flatten().all(|&x| x != UNSET));
        f(hv, caps)
    }

    fn embed(
        &self,
        st: &State,
        nm: &NodeMatching,
        chosen: &[(usize, ClassOption)],
        bad: &[(usize, Vec<ClassOption>)],
    ) -> Option<Matching> {
        let stat = self.statuses(st, nm, chosen);
        let mut base = st.clone();
        for (_, o) in chosen {
            if o.matched.len() == 1 && o.y_rank != INF {
                base.caps.push((self.nd.bagpos[o.y.expect("two neighbors")], o.y_rank));
            }
        }
        let mut found = None;
        self.phase2(&base, &stat, &mut |hv, caps| {
            found = self.extend(st, &stat, chosen, bad, hv, caps);
            found.is_none()
        });
        found
    }

    fn pee_input(
        &self,
        st: &State,
        stat: &[PeeStatus],
        chosen: &[(usize, ClassOption)],
        bad: &[(usize, Vec<ClassOption>)],
        caps: &[(usize, u32)],
    ) -> PeeInput {
        let inst = self.ctx.inst;
        let g = inst.graph();
        let nd = self.nd;
        let vertices = nd
            .bag
            .iter()
            .zip(stat)
            .map(|(&x, &status)| PeeVertex { maxrk: inst.maxrk(x), status })
            .collect();
        let xt_edges = nd
            .xedges
            .iter()
            .filter_map(|&e| {
                let [a, b] = g.edge(e);
                (st.mate[a] != Some(b)).then(|| ((nd.bagpos[a], inst.rk(a, b)), (nd.bagpos[b], inst.rk(b, a))))
            })
            .collect();
        let mut children = Vec::new();
        for (ci, class) in nd.part.classes.iter().enumerate() {
            if bad.iter().any(|b| b.0 == ci) {
                continue;
            }
            let opt = chosen.iter().find(|c| c.0 == ci).map(|c| &c.1);
            for (m, contacts) in class.contacts.iter().enumerate() {
                let coords = contacts
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        if opt.is_some_and(|o| o.matched.contains(&(m, k))) {
                            Coord::Zero
                        } else {
                            Coord::Rank { vertex: nd.bagpos[c.outer], rank: c.rank }
                        }
                    })
                    .collect();
                children.push(PeeChild { coords, allowed: class.sig.clone() });
            }
        }
        let bad = bad
            .iter()
            .map(|(_, front)| {
                let o = &front[0];
                let x = nd.bagpos[o.x];
                let y = nd.bagpos[o.y.expect("bad classes have two neighbors")];
                let points = front.iter().map(|o| (o.x_rank, o.y_rank)).collect();
                if o.matched.len() == 2 {
                    BadChain::Double { x, y, points }
                } else {
                    BadChain::Single { x, y, points }
                }
            })
            .collect();
        PeeInput { vertices, perfect: self.mode == Mode::Perfect, caps: caps.to_vec(), xt_edges, children, bad }
    }

    fn extend(
        &self,
        st: &State,
        stat: &[PeeStatus],
        chosen: &[(usize, ClassOption)],
        bad: &[(usize, Vec<ClassOption>)],
        hv: &[HVector],
        caps: &[(usize, u32)],
    ) -> Option<Matching> {
        let input = self.pee_input(st, stat, chosen, bad, caps);
        let formula = build_pee_2sat(&input).ok()?;
        let assignment = solve_2sat(&formula.formula)?;
        let ranks = formula.decode(&assignment);
        let nd = self.nd;
        let classes = &nd.part.classes;
        let mut edges = st.edges.clone();
        for (ci, o) in chosen {
            edges.extend(o.matched.iter().map(|&(m, k)| classes[*ci].contacts[m][k].edge));
        }
        for (ci, front) in bad {
            let rx = ranks[nd.bagpos[front[0].x]];
            let Some(o) = front.iter().find(|o| o.x_rank == rx) else {
                debug_assert!(false, "decoded rank outside the chain");
                return None;
            };
            edges.extend(o.matched.iter().map(|&(m, k)| classes[*ci].contacts[m][k].edge));
        }
        self.assemble(edges, hv)
    }

    /// Adds child witnesses to the edges chosen at this node.
    fn assemble(&self, mut edges: Vec<usize>, hv: &[HVector]) -> Option<Matching> {
        let (ctx, nd) = (self.ctx, self.nd);
        let g = ctx.inst.graph();
        let mut mate = vec![None; g.n()];
        for &e in &edges {
            let [a, b] = g.edge(e);
            mate[a] = Some(b);
            mate[b] = Some(a);
        }
        let mut parts: Vec<&Matching> = Vec::new();
        for class in &nd.part.classes {
            for (m, &c) in class.members.iter().enumerate() {
                let mut v = vec![0i8; ctx.info.adh(c)];
                for k in &class.contacts[m] {
                    v[k.coord] = if mate[k.outer] == Some(k.inner) {
                        0
                    } else if self.rank(k.outer, mate[k.outer]) <= k.rank {
                        -1
                    } else {
                        1
                    };
                }
                let Some(w) = self.table(c).get(&v) else {
                    debug_assert!(false, "light child {c} has no witness for {v:?}");
                    return None;
                };
                parts.push(w);
            }
        }
        for (&c, v) in nd.heavy.iter().zip(hv) {
            parts.push(self.table(c).get(v).expect("heavy vector present"));
        }
        for &c in &nd.free_light {
            parts.push(self.table(c).get(&[]).expect("free child present"));
        }
        for w in parts {
            edges.extend_from_slice(w.edges());
        }
        let m = Matching::from_edges_unchecked(edges);
        debug_assert!(
            complies(ctx, nd.t, &m, self.h, self.mode).unwrap_or(false),
            "assembled matching does not comply at node {}",
            nd.t
        );
        Some(m)
    }
}

fn is_monotone(front: &[ClassOption]) -> bool {
    front.windows(2).all(|w| {
        w[0].x_rank < w[1].x_rank
            && if w[0].matched.len() == 2 { w[0].y_rank > w[1].y_rank } else { w[0].y_rank < w[1].y_rank }
    })
}

pub(crate) fn step_with(
    ctx: &DpContext,
    nd: &NodeData,
    tables: &[Option<DpTable>],
    h: &[i8],
    mode: Mode,
) -> Option<Matching> {
    Search { ctx, nd, tables, h, mode }.run()
}

/// Table entry of `t` at `h`, from the tables of its children.
pub fn induction_step(
    ctx: &DpContext,
    t: usize,
    h: &[i8],
    tables: &[Option<DpTable>],
    mode: Mode,
) -> Option<Matching> {
    let nd = NodeData::new(ctx, t, tables);
    step_with(ctx, &nd, tables, h, mode)
}

/// Heavy-children family for `t` at `h`: every combination of edges into
/// heavy children and threshold paddings whose vectors are all present.
/// Bag vertices not matched by `h` or those edges are left undecided.
pub fn heavy_candidate_family(
    ctx: &DpContext,
    t: usize,
    h: &[i8],
    tables: &[Option<DpTable>],
) -> Vec<HeavyChoice> {
    let nd = NodeData::new(ctx, t, tables);
    let s = Search { ctx, nd: &nd, tables, h, mode: Mode::Existence };
    let mut out = Vec::new();
    let Some(st) = s.start() else { return out };
    let g = ctx.inst.graph();
    let mut used: Vec<bool> = st.mate.iter().map(Option::is_some).collect();
    for_each_matching(g, &nd.hedges, &mut used, &mut Vec::new(), &mut |p| {
        let mut s1 = st.clone();
        for &e in p {
            s.add_edge(&mut s1, e);
        }
        if !s.heavy_present(&s1.hvec) {
            return true;
        }
        let stat: Vec<PeeStatus> = nd
            .bag
            .iter()
            .map(|&x| if s1.mate[x].is_some() { PeeStatus::Matched(s.rank(x, s1.mate[x])) } else { PeeStatus::Free })
            .collect();
        s.phase2(&s1, &stat, &mut |hv, _| {
            out.push(HeavyChoice { edges: p.to_vec(), vectors: hv.to_vec() });
            true
        });
        true
    });
    out
}
