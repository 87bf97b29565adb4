use std::collections::BTreeMap;

use srti_graph::ChildKind;
use srti_model::INF;

use crate::context::DpContext;
use crate::table::{DpTable, HVector};

/// A cut edge of a light child, seen from the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contact {
    pub edge: usize,
    /// Endpoint inside the child.
    pub inner: usize,
    /// Endpoint in the parent's bag.
    pub outer: usize,
    /// Rank the outer endpoint gives the inner one.
    pub rank: u32,
    /// Position of this edge in the child's table vectors.
    pub coord: usize,
}

/// Light children with the same neighborhood and the same signature.
///
/// Contacts and signature vectors use a normalized coordinate order: by
/// outer endpoint, then by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChildClass {
    pub members: Vec<usize>,
    pub contacts: Vec<Vec<Contact>>,
    pub nbrs: Vec<usize>,
    pub sig: Vec<HVector>,
}

impl ChildClass {
    pub fn allows(&self, v: &[i8]) -> bool {
        self.sig.binary_search_by(|s| s.as_slice().cmp(v)).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub classes: Vec<ChildClass>,
    /// Some class can never be embedded, so no matching complies at the node.
    pub no_instance: bool,
}

/// Which class each bag vertex is matched into (absent = not matched into a
/// light child).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeMatching {
    pub pairs: BTreeMap<usize, usize>,
}

impl NodeMatching {
    pub fn of(&self, x: usize) -> Option<usize> {
        self.pairs.get(&x).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Good,
    Bad,
    Unmatched,
}

/// One way to match bag vertices into a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassOption {
    /// `(member index, contact index)` pairs that are matched.
    pub matched: Vec<(usize, usize)>,
    pub x: usize,
    pub x_rank: u32,
    /// The other neighbor, if any.
    pub y: Option<usize>,
    /// Rank of `y`'s partner when both are matched into the class; otherwise
    /// the worst rank `y`'s partner may have (`INF` for no limit).
    pub y_rank: u32,
}

/// Contacts of a light child in normalized order.
pub fn contacts_of(ctx: &DpContext, t: usize, c: usize) -> Vec<Contact> {
    let inst = ctx.inst;
    let mut out: Vec<Contact> = ctx
        .cut(c)
        .iter()
        .enumerate()
        .map(|(coord, &e)| {
            let (inner, outer) = ctx.split(c, e);
            debug_assert_eq!(ctx.info.owner[outer], t);
            Contact { edge: e, inner, outer, rank: inst.rk(outer, inner), coord }
        })
        .collect();
    out.sort_by_key(|k| (k.outer, k.edge));
    out
}

/// Partitions the light children of `t` with at least one cut edge into
/// classes, and flags classes that rule out every complying matching.
pub fn light_classes(ctx: &DpContext, t: usize, tables: &[Option<DpTable>]) -> ClassPartition {
    let mut classes: Vec<ChildClass> = Vec::new();
    let mut no_instance = false;
    for &c in &ctx.info.children[t] {
        if ctx.kinds[c] != Some(ChildKind::Light) || ctx.info.adh(c) == 0 {
            continue;
        }
        let table = tables[c].as_ref().expect("child table computed");
        let contacts = contacts_of(ctx, t, c);
        let mut sig: Vec<HVector> = table
            .sig()
            .into_iter()
            .map(|h| contacts.iter().map(|k| h[k.coord]).collect())
            .collect();
        sig.sort();
        if sig.is_empty() {
            no_instance = true;
        }
        let mut nbrs: Vec<usize> = contacts.iter().map(|k| k.outer).collect();
        nbrs.dedup();
        match classes.iter_mut().find(|k| k.nbrs == nbrs && k.sig == sig) {
            Some(k) => {
                k.members.push(c);
                k.contacts.push(contacts);
            }
            None => classes.push(ChildClass { members: vec![c], contacts: vec![contacts], nbrs, sig }),
        }
    }
    for k in &classes {
        let all_minus = vec![-1i8; k.contacts[0].len()];
        if !k.allows(&all_minus) && k.members.len() > k.nbrs.len() {
            no_instance = true;
        }
    }
    ClassPartition { classes, no_instance }
}

/// GOOD / BAD / UNMATCHED classification of class `idx` under `nm`.
pub fn classify_class(class: &ChildClass, idx: usize, nm: &NodeMatching) -> ClassKind {
    let matched: Vec<usize> = (0..class.nbrs.len()).filter(|&i| nm.of(class.nbrs[i]) == Some(idx)).collect();
    if matched.is_empty() {
        return ClassKind::Unmatched;
    }
    if class.nbrs.len() == 2 && class.contacts[0].len() == 2 {
        if matched.len() == 1 {
            let (xi, yi) = (matched[0], 1 - matched[0]);
            let sig_y: Vec<i8> = [-1, 0, 1]
                .into_iter()
                .filter(|&h| {
                    let mut v = [0i8; 2];
                    v[xi] = h;
                    v[yi] = 1;
                    class.allows(&v)
                })
                .collect();
            if sig_y == [-1, 1] {
                return ClassKind::Bad;
            }
        } else {
            let a = class.allows(&[-1, 0]);
            let b = class.allows(&[0, -1]);
            if (!a || !b) && class.allows(&[1, -1]) && class.allows(&[-1, 1]) {
                return ClassKind::Bad;
            }
        }
    }
    ClassKind::Good
}

fn val(partner_rank: u32, rank: u32) -> i8 {
    if partner_rank <= rank {
        -1
    } else {
        1
    }
}

/// Vector of member `m` given the neighbors' partner ranks and its matched contact(s).
fn member_vector(class: &ChildClass, m: usize, rank_of: &dyn Fn(usize) -> u32, matched: &[usize]) -> Vec<i8> {
    class.contacts[m]
        .iter()
        .enumerate()
        .map(|(i, k)| if matched.contains(&i) { 0 } else { val(rank_of(k.outer), k.rank) })
        .collect()
}

fn others_ok(class: &ChildClass, skip: &[usize], rank_of: &dyn Fn(usize) -> u32) -> bool {
    (0..class.members.len())
        .filter(|m| !skip.contains(m))
        .all(|m| class.allows(&member_vector(class, m, rank_of, &[])))
}

/// Options for a class that receives at least one bag vertex, reduced to
/// the Pareto front (lower rank for the matched vertices first, then the
/// weakest requirement on the other neighbor). Empty if none is feasible.
pub fn class_front(class: &ChildClass, idx: usize, nm: &NodeMatching) -> Vec<ClassOption> {
    let matched: Vec<usize> = (0..class.nbrs.len()).filter(|&i| nm.of(class.nbrs[i]) == Some(idx)).collect();
    match (class.nbrs.len(), matched.len()) {
        (_, 0) => Vec::new(),
        (1, _) => single_front(class),
        (2, 1) => one_sided_front(class, matched[0]),
        _ => two_sided_front(class),
    }
}

fn single_front(class: &ChildClass) -> Vec<ClassOption> {
    let x = class.nbrs[0];
    let mut ranks: Vec<u32> = class.contacts.iter().flatten().map(|k| k.rank).collect();
    ranks.sort_unstable();
    ranks.dedup();
    for r in ranks {
        let rank_of = |_: usize| r;
        let failing: Vec<usize> = (0..class.members.len())
            .filter(|&m| !class.allows(&member_vector(class, m, &rank_of, &[])))
            .collect();
        if failing.len() >= 2 {
            break;
        }
        let pool: Vec<usize> = if failing.is_empty() { (0..class.members.len()).collect() } else { failing };
        for m in pool {
            for (i, k) in class.contacts[m].iter().enumerate() {
                if k.rank == r && class.allows(&member_vector(class, m, &rank_of, &[i])) {
                    return vec![ClassOption { matched: vec![(m, i)], x, x_rank: r, y: None, y_rank: INF }];
                }
            }
        }
    }
    Vec::new()
}

fn one_sided_front(class: &ChildClass, xi: usize) -> Vec<ClassOption> {
    let yi = 1 - xi;
    let (x, y) = (class.nbrs[xi], class.nbrs[yi]);
    let mut rhos: Vec<u32> = class.contacts.iter().map(|c| c[yi].rank).collect();
    rhos.sort_unstable();
    rhos.dedup();
    rhos.push(INF);
    let mut opts = Vec::new();
    for c in 0..class.members.len() {
        let r = class.contacts[c][xi].rank;
        let mut best = None;
        for &rho in &rhos {
            let rank_of = |v: usize| if v == x { r } else { rho };
            let ok = class.allows(&member_vector(class, c, &rank_of, &[xi])) && others_ok(class, &[c], &rank_of);
            if !ok {
                break;
            }
            best = Some(rho);
        }
        if let Some(l) = best {
            opts.push(ClassOption { matched: vec![(c, xi)], x, x_rank: r, y: Some(y), y_rank: l });
        }
    }
    opts.sort_by(|a, b| a.x_rank.cmp(&b.x_rank).then(b.y_rank.cmp(&a.y_rank)));
    let mut front: Vec<ClassOption> = Vec::new();
    for o in opts {
        if front.last().is_none_or(|f| o.y_rank > f.y_rank) {
            front.push(o);
        }
    }
    front
}

fn two_sided_front(class: &ChildClass) -> Vec<ClassOption> {
    let (x, y) = (class.nbrs[0], class.nbrs[1]);
    let mut opts = Vec::new();
    for c in 0..class.members.len() {
        for d in 0..class.members.len() {
            let (r, s) = (class.contacts[c][0].rank, class.contacts[d][1].rank);
            let rank_of = |v: usize| if v == x { r } else { s };
            let ok = if c == d {
                class.allows(&member_vector(class, c, &rank_of, &[0, 1])) && others_ok(class, &[c], &rank_of)
            } else {
                class.allows(&member_vector(class, c, &rank_of, &[0]))
                    && class.allows(&member_vector(class, d, &rank_of, &[1]))
                    && others_ok(class, &[c, d], &rank_of)
            };
            if ok {
                opts.push(ClassOption { matched: vec![(c, 0), (d, 1)], x, x_rank: r, y: Some(y), y_rank: s });
            }
        }
    }
    opts.sort_by(|a, b| a.x_rank.cmp(&b.x_rank).then(a.y_rank.cmp(&b.y_rank)));
    let mut front: Vec<ClassOption> = Vec::new();
    for o in opts {
        if front.last().is_none_or(|f| o.y_rank < f.y_rank) {
            front.push(o);
        }
    }
    front
}

/// Candidate members for a GOOD class: the children used by its front.
pub fn good_class_candidates(class: &ChildClass, idx: usize, nm: &NodeMatching) -> Vec<usize> {
    let mut out: Vec<usize> = class_front(class, idx, nm)
        .iter()
        .flat_map(|o| o.matched.iter().map(|&(m, _)| class.members[m]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Monotone chain for a BAD class: option ranks strictly increase for the
/// matched vertex and strictly increase (one-sided: the allowed rank of
/// the other neighbor) or strictly decrease (two-sided) for the other.
pub fn reduce_bad_class(class: &ChildClass, idx: usize, nm: &NodeMatching) -> Vec<ClassOption> {
    class_front(class, idx, nm)
}
