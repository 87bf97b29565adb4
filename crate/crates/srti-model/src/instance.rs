use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::ModelError;
use crate::graph::Graph;

/// Rank of an unmatched agent's partner (and of an agent for itself).
pub const INF: u32 = u32::MAX;

/// An SRTI instance: agents with preference lists made of tie groups.
///
/// Agents are indexed by the lexicographic rank of their identifier. The raw
/// lists are kept verbatim (including one-sided entries); ranks are derived
/// from the mutually acceptable part, with empty groups removed.
#[derive(Clone, Debug)]
pub struct Instance {
    names: Vec<String>,
    index: HashMap<String, usize>,
    listing: Vec<usize>,
    lists: Vec<Vec<Vec<usize>>>,
    graph: Graph,
    ranks: Vec<[u32; 2]>,
    maxrk: Vec<u32>,
    dropped: Vec<(usize, usize)>,
}

/// Checks that a string is usable as an agent identifier.
pub fn valid_id(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '(' | ')' | '#'))
}

impl Instance {
    /// Builds an instance from named agents and their tie groups.
    ///
    /// The order of `agents` is kept as listing order for serialization.
    pub fn from_lists(agents: Vec<(String, Vec<Vec<String>>)>) -> Result<Instance, ModelError> {
        let mut names: Vec<String> = Vec::with_capacity(agents.len());
        let mut seen = HashSet::new();
        for (name, _) in &agents {
            if !valid_id(name) {
                return Err(ModelError::BadId(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(ModelError::DuplicateAgent(name.clone()));
            }
            names.push(name.clone());
        }
        names.sort();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut lists = vec![Vec::new(); names.len()];
        let mut listing = Vec::with_capacity(agents.len());
        for (name, groups) in agents {
            let v = index[&name];
            listing.push(v);
            let mut mine = HashSet::new();
            let mut out = Vec::with_capacity(groups.len());
            for group in groups {
                if group.is_empty() {
                    return Err(ModelError::EmptyGroup(name.clone()));
                }
                let mut g = Vec::with_capacity(group.len());
                for other in group {
                    let Some(&w) = index.get(&other) else {
                        return Err(ModelError::UnknownAgent { agent: name.clone(), other });
                    };
                    if w == v {
                        return Err(ModelError::SelfListing(name.clone()));
                    }
                    if !mine.insert(w) {
                        return Err(ModelError::DuplicateListing { agent: name.clone(), other });
                    }
                    g.push(w);
                }
                out.push(g);
            }
            lists[v] = out;
        }
        Ok(Self::derive(names, index, listing, lists))
    }

    fn derive(
        names: Vec<String>,
        index: HashMap<String, usize>,
        listing: Vec<usize>,
        lists: Vec<Vec<Vec<usize>>>,
    ) -> Instance {
        let n = names.len();
        let listed: Vec<HashSet<usize>> = lists
            .iter()
            .map(|gs| gs.iter().flatten().copied().collect())
            .collect();
        let mut dropped = Vec::new();
        let mut pairs = Vec::new();
        // Effective rank of w at v after removing one-sided entries and empty groups.
        let mut rank_at: Vec<HashMap<usize, u32>> = vec![HashMap::new(); n];
        let mut maxrk = vec![0u32; n];
        for v in 0..n {
            let mut r = 0u32;
            for group in &lists[v] {
                let mut any = false;
                for &w in group {
                    if listed[w].contains(&v) {
                        if !any {
                            r += 1;
                            any = true;
                        }
                        rank_at[v].insert(w, r);
                        if v < w {
                            pairs.push((v, w));
                        }
                    } else {
                        dropped.push((v, w));
                    }
                }
            }
            maxrk[v] = r;
        }
        dropped.sort_unstable();
        let graph = Graph::new(n, pairs);
        let ranks = graph
            .edges()
            .iter()
            .map(|&[a, b]| [rank_at[a][&b], rank_at[b][&a]])
            .collect();
        Instance { names, index, listing, lists, graph, ranks, maxrk, dropped }
    }

    /// Empty instance with no agents.
    pub fn empty() -> Instance {
        Self::derive(Vec::new(), HashMap::new(), Vec::new(), Vec::new())
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Agents in their original listing order.
    pub fn listing(&self) -> &[usize] {
        &self.listing
    }

    /// Raw tie groups of `v`, as given (including one-sided entries).
    pub fn lists(&self, v: usize) -> &[Vec<usize>] {
        &self.lists[v]
    }

    /// The acceptability graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// One-sided listings `(lister, listed)` that were ignored.
    pub fn dropped(&self) -> &[(usize, usize)] {
        &self.dropped
    }

    /// Fails on the first one-sided listing (strict mode).
    pub fn require_mutual(&self) -> Result<(), ModelError> {
        match self.dropped.first() {
            Some(&(v, w)) => Err(ModelError::OneSided {
                agent: self.names[v].clone(),
                other: self.names[w].clone(),
            }),
            None => Ok(()),
        }
    }

    /// Rank that `v` gives to the other endpoint of edge `e`.
    pub fn rk_edge(&self, e: usize, v: usize) -> u32 {
        let [a, _] = self.graph.edge(e);
        if a == v {
            self.ranks[e][0]
        } else {
            self.ranks[e][1]
        }
    }

    /// `rk_v(w)`; `INF` when `w` is `v` or not an acceptable partner.
    pub fn rk(&self, v: usize, w: usize) -> u32 {
        match self.graph.edge_between(v, w) {
            Some(e) => self.rk_edge(e, v),
            None => INF,
        }
    }

    /// Largest finite rank used by `v` (0 when `v` has no neighbors).
    pub fn maxrk(&self, v: usize) -> u32 {
        self.maxrk[v]
    }

    /// Rebuilds with replaced raw lists (same agents and listing order).
    pub(crate) fn with_lists(&self, lists: Vec<Vec<Vec<usize>>>) -> Instance {
        Self::derive(self.names.clone(), self.index.clone(), self.listing.clone(), lists)
    }
}

/// Incremental builder for generated instances.
///
/// Edges are added with a rank at each endpoint; ranks may leave gaps and are
/// compacted (order preserved) when building. Agents keep creation order.
#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    ranks: Vec<BTreeMap<usize, u32>>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, creating the agent if needed.
    pub fn agent(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.ranks.push(BTreeMap::new());
        i
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Adds the mutual edge `{u, v}` with `u` ranking `v` at `ru` and vice versa.
    pub fn edge(&mut self, u: usize, v: usize, ru: u32, rv: u32) -> Result<(), ModelError> {
        if u == v {
            return Err(ModelError::SelfListing(self.names[u].clone()));
        }
        if self.ranks[u].contains_key(&v) {
            return Err(ModelError::DuplicateListing {
                agent: self.names[u].clone(),
                other: self.names[v].clone(),
            });
        }
        self.ranks[u].insert(v, ru);
        self.ranks[v].insert(u, rv);
        Ok(())
    }

    /// Rank `u` currently gives `v`, if the edge exists.
    pub fn rank(&self, u: usize, v: usize) -> Option<u32> {
        self.ranks[u].get(&v).copied()
    }

    /// Largest rank currently used by `u` (0 if none).
    pub fn worst_rank(&self, u: usize) -> u32 {
        self.ranks[u].values().copied().max().unwrap_or(0)
    }

    pub fn build(&self) -> Result<Instance, ModelError> {
        let agents = self
            .names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let mut by_rank: BTreeMap<u32, Vec<String>> = BTreeMap::new();
                for (&w, &r) in &self.ranks[i] {
                    by_rank.entry(r).or_default().push(self.names[w].clone());
                }
                let groups = by_rank
                    .into_values()
                    .map(|mut g| {
                        g.sort();
                        g
                    })
                    .collect();
                (name.clone(), groups)
            })
            .collect();
        Instance::from_lists(agents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn mutual_edges_only() {
        let inst = Instance::from_lists(vec![
            (s("a"), vec![vec![s("b")], vec![s("c")]]),
            (s("b"), vec![vec![s("a")]]),
            (s("c"), vec![]),
        ])
        .unwrap();
        assert_eq!(inst.graph().edges(), &[[0, 1]]);
        assert_eq!(inst.dropped(), &[(0, 2)]);
        assert_eq!(inst.rk(0, 1), 1);
        assert_eq!(inst.rk(0, 2), INF);
        assert!(inst.require_mutual().is_err());
    }

    #[test]
    fn ranks_are_compacted_after_dropping() {
        let inst = Instance::from_lists(vec![
            (s("a"), vec![vec![s("c")], vec![s("b")]]),
            (s("b"), vec![vec![s("a")]]),
            (s("c"), vec![]),
        ])
        .unwrap();
        assert_eq!(inst.rk(0, 1), 1);
        assert_eq!(inst.maxrk(0), 1);
    }

    #[test]
    fn validation_errors_name_the_agent() {
        let e = Instance::from_lists(vec![(s("a"), vec![vec![s("a")]])]).unwrap_err();
        assert_eq!(e, ModelError::SelfListing(s("a")));
        let e = Instance::from_lists(vec![
            (s("a"), vec![vec![s("b")], vec![s("b")]]),
            (s("b"), vec![]),
        ])
        .unwrap_err();
        assert!(matches!(e, ModelError::DuplicateListing { .. }));
        let e = Instance::from_lists(vec![(s("a"), vec![vec![s("z")]])]).unwrap_err();
        assert!(matches!(e, ModelError::UnknownAgent { .. }));
    }

    #[test]
    fn builder_compacts_gapped_ranks() {
        let mut b = InstanceBuilder::new();
        let x = b.agent("x");
        let y = b.agent("y");
        let z = b.agent("z");
        b.edge(x, y, 5, 1).unwrap();
        b.edge(x, z, 9, 1).unwrap();
        let inst = b.build().unwrap();
        assert_eq!(inst.rk(inst.id("x").unwrap(), inst.id("y").unwrap()), 1);
        assert_eq!(inst.rk(inst.id("x").unwrap(), inst.id("z").unwrap()), 2);
        assert_eq!(inst.listing(), &[0, 1, 2]);
    }
}
