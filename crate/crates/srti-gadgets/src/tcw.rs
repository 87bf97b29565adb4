//! Clique → Max-SRTI with bounded tree-cut width.

use std::collections::BTreeMap;

use srti_graph::TreeCutDecomposition;
use srti_model::{blocking_pairs, Graph, Instance, Matching};

use crate::emit::Emitter;
use crate::error::GadgetError;
use crate::parts::{to_matching, EdgeGadget, ParallelGadget, ParallelUse, VertexGadget};
use crate::sketch::Sketch;
use crate::source::{arcs, check_clique};

/// Vertex gadget of `c_i` for source vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choice {
    pub i: usize,
    pub v: usize,
    pub gadget: VertexGadget,
}

/// One of the `n − 1` parallel edges between `c_i` and `c_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub i: usize,
    pub j: usize,
    /// 1-based position `l`: rank `2l` at `c_i`, `2(n − l)` at `c_ij`.
    pub l: usize,
    pub gadget: ParallelGadget,
}

/// Edge gadget between `c_ij` and `c_ji` (`i < j`) for the arc `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub i: usize,
    pub j: usize,
    pub tail: usize,
    pub head: usize,
    pub gadget: EdgeGadget,
}

#[derive(Clone, Debug)]
pub struct TcwReduction {
    pub source: Graph,
    pub k: usize,
    pub strict: bool,
    pub instance: Instance,
    pub big_c: usize,
    pub kappa: usize,
    pub target: usize,
    /// Star decomposition witness.
    pub tcd: TreeCutDecomposition,
    pub c: Vec<usize>,
    /// `c_ij` keyed by `(i, j)`.
    pub inc: BTreeMap<(usize, usize), usize>,
    pub choices: Vec<Choice>,
    pub bundles: Vec<Bundle>,
    pub links: Vec<Link>,
}

/// `C = (14 + 6n)·m·k(k−1) + 8k(k−1)(n−1)`.
pub fn tcw_big_c(n: usize, m: usize, k: usize) -> usize {
    (14 + 6 * n) * m * k * (k - 1) + 8 * k * (k - 1) * n.saturating_sub(1)
}

/// Sum of the per-gadget minima: vertex gadgets `C + v(k−1) + 2`,
/// `3` per parallel-edges gadget, `5 + (n−v) + (n−w)` per edge gadget.
pub fn tcw_kappa(g: &Graph, k: usize) -> usize {
    let (n, m) = (g.n(), g.m());
    let c = tcw_big_c(n, m, k);
    let vertex = k * (n * (c + 2) + (k - 1) * n * (n + 1) / 2);
    let parallel = 3 * k * (k - 1) * n.saturating_sub(1);
    let weighted: usize = (0..n).map(|v| g.degree(v) * (v + 1)).sum();
    let per_pair = 10 * m + 4 * n * m - 2 * weighted;
    vertex + parallel + k * (k - 1) / 2 * per_pair
}

/// `κ + k(k−1)n + k(k−1)/2 + kC`.
pub fn tcw_target(g: &Graph, k: usize) -> usize {
    let n = g.n();
    tcw_kappa(g, k) + k * (k - 1) * n + k * (k - 1) / 2 + k * tcw_big_c(n, g.m(), k)
}

/// Builds the reduction. `strict` (experimental) breaks every tie in lists
/// of length ≥ 3, keeping `c` first at a vertex gadget's `w` and `x` first
/// at an edge gadget's `w`.
pub fn gen_tcw_reduction(g: &Graph, k: usize, strict: bool) -> Result<TcwReduction, GadgetError> {
    if k < 2 {
        return Err(GadgetError::SmallK(k));
    }
    let (n, m) = (g.n(), g.m());
    let big_c = tcw_big_c(n, m, k);
    let mut em = Emitter::new();
    let c: Vec<usize> = (1..=k).map(|i| em.agent(&format!("c/{i}"))).collect::<Result<_, _>>()?;
    let mut inc = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                inc.insert((i, j), em.agent(&format!("c/{}-{}", i + 1, j + 1))?);
            }
        }
    }
    let mut sk = Sketch::root(c.iter().chain(inc.values()).copied().collect());
    let mut choices = Vec::new();
    for (i, &ci) in c.iter().enumerate() {
        for v in 0..n {
            let rank = 2 * (v + 1) as u32 - 1;
            let gadget = VertexGadget::emit(&mut em, ci, big_c + (v + 1) * (k - 1), rank)?;
            gadget.attach(&mut sk, 0);
            choices.push(Choice { i, v, gadget });
        }
    }
    let mut bundles = Vec::new();
    for (&(i, j), &cij) in &inc {
        for l in 1..n {
            let gadget = ParallelGadget::emit(&mut em, c[i], cij, 2 * l as u32, 2 * (n - l) as u32)?;
            sk.node(0, gadget.inner().to_vec());
            bundles.push(Bundle { i, j, l, gadget });
        }
    }
    let mut links = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for (tail, head) in arcs(g) {
                let (kt, kh) = (n - 1 - tail, n - 1 - head);
                let gadget = EdgeGadget::emit(
                    &mut em,
                    [inc[&(i, j)], inc[&(j, i)]],
                    [2 * kt as u32 + 1, 2 * kh as u32 + 1],
                    [kt, kh],
                )?;
                gadget.attach(&mut sk, 0);
                links.push(Link { i, j, tail, head, gadget });
            }
        }
    }
    let built = em.build(strict)?;
    let ids = &built.ids;
    let red = TcwReduction {
        source: g.clone(),
        k,
        strict,
        big_c,
        kappa: tcw_kappa(g, k),
        target: tcw_target(g, k),
        tcd: sk.finish(ids),
        c: c.iter().map(|&x| ids[x]).collect(),
        inc: inc.iter().map(|(&key, &x)| (key, ids[x])).collect(),
        choices: choices
            .iter()
            .map(|ch| Choice { gadget: ch.gadget.map(ids), ..ch.clone() })
            .collect(),
        bundles: bundles
            .iter()
            .map(|b| Bundle { gadget: b.gadget.map(ids), ..b.clone() })
            .collect(),
        links: links
            .iter()
            .map(|l| Link { gadget: l.gadget.map(ids), ..l.clone() })
            .collect(),
        instance: built.instance,
    };
    Ok(red)
}

impl TcwReduction {
    /// `κ` recomputed from the registries.
    pub fn registry_kappa(&self) -> usize {
        let vertex: usize = self.choices.iter().map(|c| c.gadget.base()).sum();
        let links: usize = self.links.iter().map(|l| l.gadget.base()).sum();
        vertex + 3 * self.bundles.len() + links
    }

    /// `max(k², 10)`.
    pub fn width_bound(&self) -> usize {
        (self.k * self.k).max(10)
    }

    pub fn manifest(&self) -> String {
        let width = srti_graph::validate_tcd(self.instance.graph(), &self.tcd)
            .map_or_else(|e| format!("invalid ({e})"), |r| r.width.to_string());
        format!(
            "kind: clique-tcw\nn: {}\nm: {}\nk: {}\nstrict: {}\nagents: {}\nC: {}\nkappa: {}\ntarget: {}\nwidth: {}\nwidth_bound: {}\n",
            self.source.n(),
            self.source.m(),
            self.k,
            self.strict,
            self.instance.n(),
            self.big_c,
            self.kappa,
            self.target,
            width,
            self.width_bound()
        )
    }
}

/// Stable matching of the target size built from a `k`-clique (0-based).
pub fn tcw_clique_witness(red: &TcwReduction, clique: &[usize]) -> Result<Matching, GadgetError> {
    let x = check_clique(&red.source, red.k, clique)?;
    let mut pairs = Vec::new();
    for ch in &red.choices {
        pairs.extend(ch.gadget.pairs(ch.v == x[ch.i]));
    }
    for b in &red.bundles {
        // `c_i` prefers this edge iff 2l < 2x_i − 1 (x 1-based).
        let how = if b.l < x[b.i] + 1 { ParallelUse::ExposeV } else { ParallelUse::ExposeU };
        pairs.extend(b.gadget.pairs(how));
    }
    for l in &red.links {
        let sel = l.tail == x[l.i] && l.head == x[l.j];
        pairs.extend(l.gadget.pairs([sel, sel]));
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
