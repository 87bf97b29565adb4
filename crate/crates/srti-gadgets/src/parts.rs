//! Building blocks of the tree-cut-width reduction.

use srti_graph::TreeCutDecomposition;
use srti_model::{Graph, Matching};

use crate::emit::{Built, Emitter};
use crate::error::GadgetError;
use crate::sketch::Sketch;

/// A 6-cycle standing in for one of several parallel edges `{u, v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelGadget {
    pub u: usize,
    pub v: usize,
    pub u0: usize,
    pub u1: usize,
    pub u2: usize,
    pub v0: usize,
    pub v1: usize,
    pub v2: usize,
}

/// How a parallel-edges gadget is matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParallelUse {
    /// `{u, u0}` and `{v0, v}` are both matched.
    Used,
    /// Interior perfect matching leaving `v0` at its worst partner.
    ExposeV,
    /// Interior perfect matching leaving `u0` at its worst partner.
    ExposeU,
}

impl ParallelGadget {
    /// `u` ranks the gadget at `i`, `v` at `j`.
    pub fn emit(em: &mut Emitter, u: usize, v: usize, i: u32, j: u32) -> Result<ParallelGadget, GadgetError> {
        let idx = em.next_index("pe");
        let mut a = |s: &str| em.agent(&format!("pe/{idx}/{s}"));
        let (u0, u1, u2, v0, v1, v2) = (a("u0")?, a("u1")?, a("u2")?, a("v0")?, a("v1")?, a("v2")?);
        em.edge(u, u0, i, 2)?;
        em.edge(u0, u1, 1, 2)?;
        em.edge(u1, v1, 1, 2)?;
        em.edge(v1, v0, 1, 3)?;
        em.edge(v0, v2, 1, 2)?;
        em.edge(v2, u2, 1, 2)?;
        em.edge(u2, u0, 1, 3)?;
        em.edge(v0, v, 2, j)?;
        Ok(ParallelGadget { u, v, u0, u1, u2, v0, v1, v2 })
    }

    pub fn inner(&self) -> [usize; 6] {
        [self.u0, self.u1, self.v1, self.v0, self.v2, self.u2]
    }

    pub fn pairs(&self, how: ParallelUse) -> Vec<(usize, usize)> {
        match how {
            ParallelUse::Used => vec![(self.u, self.u0), (self.v0, self.v), (self.u1, self.v1), (self.v2, self.u2)],
            ParallelUse::ExposeV => vec![(self.u0, self.u1), (self.v1, self.v0), (self.v2, self.u2)],
            ParallelUse::ExposeU => vec![(self.u1, self.v1), (self.v0, self.v2), (self.u2, self.u0)],
        }
    }

    pub fn map(&self, ids: &[usize]) -> ParallelGadget {
        let m = |x: usize| ids[x];
        ParallelGadget {
            u: m(self.u),
            v: m(self.v),
            u0: m(self.u0),
            u1: m(self.u1),
            u2: m(self.u2),
            v0: m(self.v0),
            v1: m(self.v1),
            v2: m(self.v2),
        }
    }
}

/// Vertex gadget: triangle `w, w', w''`, hub `c`, and `j` pendant 3-paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexGadget {
    /// The outside vertex ranking `w` at `ell`.
    pub outer: usize,
    pub ell: u32,
    pub w: usize,
    pub w1: usize,
    pub w2: usize,
    pub c: usize,
    /// `[p_1, p_2, p_3, p_4]` per path; `c` is joined to `p_2`.
    pub paths: Vec<[usize; 4]>,
}

impl VertexGadget {
    pub fn emit(em: &mut Emitter, outer: usize, j: usize, ell: u32) -> Result<VertexGadget, GadgetError> {
        let idx = em.next_index("vg");
        let pre = format!("vg/{idx}");
        let w = em.agent(&format!("{pre}/w"))?;
        let w1 = em.agent(&format!("{pre}/w'"))?;
        let w2 = em.agent(&format!("{pre}/w''"))?;
        let c = em.agent(&format!("{pre}/c"))?;
        em.edge(outer, w, ell, 1)?;
        em.edge(w, c, 1, 2)?;
        em.edge(w, w1, 3, 1)?;
        em.edge(w1, w2, 2, 1)?;
        em.edge(w2, w, 2, 2)?;
        em.prefer_first(w, c);
        let mut paths = Vec::with_capacity(j);
        for q in 1..=j {
            let p: Vec<usize> = (1..=4)
                .map(|r| em.agent(&format!("{pre}/p{q}.{r}")))
                .collect::<Result<_, _>>()?;
            em.edge(c, p[1], 1, 2)?;
            em.edge(p[0], p[1], 1, 3)?;
            em.edge(p[1], p[2], 1, 1)?;
            em.edge(p[2], p[3], 1, 1)?;
            paths.push([p[0], p[1], p[2], p[3]]);
        }
        Ok(VertexGadget { outer, ell, w, w1, w2, c, paths })
    }

    /// Minimum size of a maximum stable matching inside the gadget.
    pub fn base(&self) -> usize {
        self.paths.len() + 2
    }

    /// Edges with an endpoint in the gadget; `selected` iff `{outer, w}` is used.
    pub fn pairs(&self, selected: bool) -> Vec<(usize, usize)> {
        let mut out = vec![(self.w1, self.w2)];
        if selected {
            out.push((self.outer, self.w));
            for (q, p) in self.paths.iter().enumerate() {
                if q == 0 {
                    out.push((self.c, p[1]));
                } else {
                    out.push((p[0], p[1]));
                }
                out.push((p[2], p[3]));
            }
        } else {
            out.push((self.w, self.c));
            out.extend(self.paths.iter().map(|p| (p[1], p[2])));
        }
        out
    }

    /// Star: hub node below `parent`, one leaf per path.
    pub fn attach(&self, sk: &mut Sketch, parent: usize) {
        let hub = sk.node(parent, vec![self.w, self.w1, self.w2, self.c]);
        for p in &self.paths {
            sk.node(hub, p.to_vec());
        }
    }

    pub fn map(&self, ids: &[usize]) -> VertexGadget {
        VertexGadget {
            outer: ids[self.outer],
            ell: self.ell,
            w: ids[self.w],
            w1: ids[self.w1],
            w2: ids[self.w2],
            c: ids[self.c],
            paths: self.paths.iter().map(|p| p.map(|x| ids[x])).collect(),
        }
    }
}

/// Edge gadget: path `w¹ x¹ y¹ y² x² w²`, a triangle at each `wⁱ`, and
/// `kᵢ` pendant 3-paths at each `xⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    /// Left and right outside neighbors.
    pub outer: [usize; 2],
    /// Ranks the outside neighbors give the gadget.
    pub j: [u32; 2],
    pub w: [usize; 2],
    pub w1: [usize; 2],
    pub w2: [usize; 2],
    pub x: [usize; 2],
    pub y: [usize; 2],
    pub paths: [Vec<[usize; 4]>; 2],
}

impl EdgeGadget {
    pub fn emit(
        em: &mut Emitter,
        outer: [usize; 2],
        j: [u32; 2],
        k: [usize; 2],
    ) -> Result<EdgeGadget, GadgetError> {
        let idx = em.next_index("eg");
        let pre = format!("eg/{idx}");
        let mut w = [0; 2];
        let mut w1 = [0; 2];
        let mut w2 = [0; 2];
        let mut x = [0; 2];
        let mut y = [0; 2];
        let mut paths: [Vec<[usize; 4]>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            let side = s + 1;
            w[s] = em.agent(&format!("{pre}/w{side}"))?;
            w1[s] = em.agent(&format!("{pre}/w{side}'"))?;
            w2[s] = em.agent(&format!("{pre}/w{side}''"))?;
            x[s] = em.agent(&format!("{pre}/x{side}"))?;
            y[s] = em.agent(&format!("{pre}/y{side}"))?;
            em.edge(outer[s], w[s], j[s], 1)?;
            em.edge(w[s], x[s], 1, 3)?;
            em.edge(w[s], w1[s], 2, 2)?;
            em.edge(w1[s], w2[s], 1, 2)?;
            em.edge(w2[s], w[s], 1, 3)?;
            em.prefer_first(w[s], x[s]);
            em.edge(x[s], y[s], 1, 1)?;
            for q in 1..=k[s] {
                let p: Vec<usize> = (1..=4)
                    .map(|r| em.agent(&format!("{pre}/p{side}.{q}.{r}")))
                    .collect::<Result<_, _>>()?;
                em.edge(x[s], p[1], 2, 2)?;
                em.edge(p[0], p[1], 1, 3)?;
                em.edge(p[1], p[2], 1, 1)?;
                em.edge(p[2], p[3], 1, 1)?;
                paths[s].push([p[0], p[1], p[2], p[3]]);
            }
        }
        em.edge(y[0], y[1], 1, 1)?;
        Ok(EdgeGadget { outer, j, w, w1, w2, x, y, paths })
    }

    pub fn k(&self) -> [usize; 2] {
        [self.paths[0].len(), self.paths[1].len()]
    }

    /// Minimum size of a maximum stable matching inside the gadget.
    pub fn base(&self) -> usize {
        5 + self.paths[0].len() + self.paths[1].len()
    }

    /// Largest stable pattern given which outgoing edges are used.
    pub fn pairs(&self, used: [bool; 2]) -> Vec<(usize, usize)> {
        let mut out = vec![(self.w1[0], self.w2[0]), (self.w1[1], self.w2[1])];
        if used == [true, true] {
            for s in 0..2 {
                out.push((self.outer[s], self.w[s]));
                out.push((self.x[s], self.y[s]));
                for p in &self.paths[s] {
                    out.push((p[0], p[1]));
                    out.push((p[2], p[3]));
                }
            }
            return out;
        }
        out.push((self.y[0], self.y[1]));
        for s in 0..2 {
            if !used[s] {
                out.push((self.w[s], self.x[s]));
                out.extend(self.paths[s].iter().map(|p| (p[1], p[2])));
                continue;
            }
            out.push((self.outer[s], self.w[s]));
            for (q, p) in self.paths[s].iter().enumerate() {
                if q == 0 {
                    out.push((self.x[s], p[1]));
                } else {
                    out.push((p[0], p[1]));
                }
                out.push((p[2], p[3]));
            }
        }
        out
    }

    /// Star: hub node (both sides' path and triangles) below `parent`, one
    /// leaf per pendant path.
    pub fn attach(&self, sk: &mut Sketch, parent: usize) {
        let mut hub = Vec::with_capacity(10);
        for s in 0..2 {
            hub.extend([self.w[s], self.w1[s], self.w2[s], self.x[s], self.y[s]]);
        }
        let hub = sk.node(parent, hub);
        for p in self.paths.iter().flatten() {
            sk.node(hub, p.to_vec());
        }
    }

    pub fn map(&self, ids: &[usize]) -> EdgeGadget {
        let m2 = |a: [usize; 2]| a.map(|x| ids[x]);
        EdgeGadget {
            outer: m2(self.outer),
            j: self.j,
            w: m2(self.w),
            w1: m2(self.w1),
            w2: m2(self.w2),
            x: m2(self.x),
            y: m2(self.y),
            paths: self.paths.clone().map(|ps| ps.iter().map(|p| p.map(|x| ids[x])).collect()),
        }
    }
}

/// A standalone gadget with its outside stubs.
#[derive(Clone, Debug)]
pub struct Fragment<G> {
    pub built: Built,
    /// The gadget in instance indices.
    pub gadget: G,
    /// Outgoing edges (edge ids of the built instance).
    pub boundary: Vec<usize>,
    /// Star decomposition witnessing the gadget's width bound.
    pub tcd: TreeCutDecomposition,
}

fn edge_id(g: &Graph, a: usize, b: usize) -> usize {
    g.edge_between(a, b).expect("gadget edge exists")
}

/// Matching from instance-index pairs.
pub(crate) fn to_matching(g: &Graph, pairs: &[(usize, usize)]) -> Result<Matching, GadgetError> {
    let mut edges = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        let e = g
            .edge_between(a, b)
            .ok_or_else(|| GadgetError::Witness(format!("no edge between {a} and {b}")))?;
        edges.push(e);
    }
    Ok(Matching::new(g, edges)?)
}

/// Parallel-edges gadget between fresh agents `u` and `v`.
pub fn gen_parallel_edge_gadget(i: u32, j: u32) -> Result<Fragment<ParallelGadget>, GadgetError> {
    if i == 0 || j == 0 {
        return Err(GadgetError::OutOfRange("ranks must be positive".into()));
    }
    let mut em = Emitter::new();
    let u = em.agent("u")?;
    let v = em.agent("v")?;
    let pg = ParallelGadget::emit(&mut em, u, v, i, j)?;
    let mut sk = Sketch::root(vec![u, v]);
    sk.node(0, pg.inner().to_vec());
    let built = em.build(false)?;
    let gadget = pg.map(&built.ids);
    let g = built.instance.graph();
    let boundary = vec![edge_id(g, gadget.u, gadget.u0), edge_id(g, gadget.v0, gadget.v)];
    let tcd = sk.finish(&built.ids);
    Ok(Fragment { built, gadget, boundary, tcd })
}

/// `(j, c, ell)`-vertex gadget with the outside vertex `c` as a stub.
pub fn gen_vertex_gadget(j: usize, ell: u32) -> Result<Fragment<VertexGadget>, GadgetError> {
    if j == 0 || ell == 0 {
        return Err(GadgetError::OutOfRange(format!("need j, ell >= 1 (got j={j}, ell={ell})")));
    }
    let mut em = Emitter::new();
    let outer = em.agent("c")?;
    let vg = VertexGadget::emit(&mut em, outer, j, ell)?;
    let mut sk = Sketch::root(vec![outer]);
    vg.attach(&mut sk, 0);
    let built = em.build(false)?;
    let gadget = vg.map(&built.ids);
    let boundary = vec![edge_id(built.instance.graph(), gadget.outer, gadget.w)];
    let tcd = sk.finish(&built.ids);
    Ok(Fragment { built, gadget, boundary, tcd })
}

/// `(v1, j1, k1, v2, j2, k2)`-edge gadget with stubs `v1`, `v2`.
pub fn gen_edge_gadget_tcw(j1: u32, k1: usize, j2: u32, k2: usize) -> Result<Fragment<EdgeGadget>, GadgetError> {
    if j1 == 0 || j2 == 0 || k1 == 0 || k2 == 0 {
        return Err(GadgetError::OutOfRange(format!(
            "need j1, k1, j2, k2 >= 1 (got {j1}, {k1}, {j2}, {k2})"
        )));
    }
    let mut em = Emitter::new();
    let v1 = em.agent("v1")?;
    let v2 = em.agent("v2")?;
    let eg = EdgeGadget::emit(&mut em, [v1, v2], [j1, j2], [k1, k2])?;
    let mut sk = Sketch::root(vec![v1, v2]);
    eg.attach(&mut sk, 0);
    let built = em.build(false)?;
    let gadget = eg.map(&built.ids);
    let g = built.instance.graph();
    let boundary = (0..2).map(|s| edge_id(g, gadget.outer[s], gadget.w[s])).collect();
    let tcd = sk.finish(&built.ids);
    Ok(Fragment { built, gadget, boundary, tcd })
}
