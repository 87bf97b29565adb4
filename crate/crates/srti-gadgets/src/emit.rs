use std::collections::{BTreeMap, HashMap};

use srti_model::{Instance, ModelError};

use crate::error::GadgetError;

#[derive(Clone, Debug)]
struct Entry {
    other: usize,
    rank: u32,
    first: bool,
}

/// Named agents joined by edges with a (possibly gapped) rank at each end.
///
/// Ids are creation order; `build` maps them to instance indices. In strict
/// mode every list of length ≥ 3 becomes strictly ordered: ties are broken
/// by preferring entries marked with `prefer_first`, then by creation order.
#[derive(Clone, Debug, Default)]
pub struct Emitter {
    names: Vec<String>,
    index: HashMap<String, usize>,
    lists: Vec<Vec<Entry>>,
    counters: HashMap<&'static str, usize>,
}

/// A built instance plus the emitter-id → instance-index map.
#[derive(Clone, Debug)]
pub struct Built {
    pub instance: Instance,
    pub ids: Vec<usize>,
}

impl Emitter {
    pub fn new() -> Emitter {
        Emitter::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Creates a new agent; fails if the name exists or is not a valid id.
    pub fn agent(&mut self, name: &str) -> Result<usize, GadgetError> {
        if self.index.contains_key(name) {
            return Err(GadgetError::NameCollision(name.to_string()));
        }
        if !srti_model::valid_id(name) {
            return Err(ModelError::BadId(name.to_string()).into());
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        self.lists.push(Vec::new());
        Ok(v)
    }

    /// Next unused index for a gadget kind (`kind/idx/...` names).
    pub fn next_index(&mut self, kind: &'static str) -> usize {
        let c = self.counters.entry(kind).or_insert(0);
        *c += 1;
        *c
    }

    /// `{u, v}` with `u` ranking `v` at `ru` and `v` ranking `u` at `rv`.
    pub fn edge(&mut self, u: usize, v: usize, ru: u32, rv: u32) -> Result<(), GadgetError> {
        if u == v {
            return Err(ModelError::SelfListing(self.names[u].clone()).into());
        }
        if self.lists[u].iter().any(|e| e.other == v) {
            return Err(ModelError::DuplicateListing {
                agent: self.names[u].clone(),
                other: self.names[v].clone(),
            }
            .into());
        }
        self.lists[u].push(Entry { other: v, rank: ru, first: false });
        self.lists[v].push(Entry { other: u, rank: rv, first: false });
        Ok(())
    }

    /// In strict mode, `u` puts `v` ahead of the rest of its tie.
    pub fn prefer_first(&mut self, u: usize, v: usize) {
        if let Some(e) = self.lists[u].iter_mut().find(|e| e.other == v) {
            e.first = true;
        }
    }

    /// Rank `u` gives `v` as emitted (before compaction).
    pub fn rank(&self, u: usize, v: usize) -> Option<u32> {
        self.lists[u].iter().find(|e| e.other == v).map(|e| e.rank)
    }

    pub fn build(&self, strict: bool) -> Result<Built, GadgetError> {
        let agents = (0..self.len())
            .map(|v| {
                let list = &self.lists[v];
                let groups: Vec<Vec<String>> = if strict && list.len() >= 3 {
                    let mut order: Vec<(u32, bool, usize)> = list
                        .iter()
                        .enumerate()
                        .map(|(i, e)| (e.rank, !e.first, i))
                        .collect();
                    order.sort_unstable();
                    order
                        .into_iter()
                        .map(|(_, _, i)| vec![self.names[list[i].other].clone()])
                        .collect()
                } else {
                    let mut by_rank: BTreeMap<u32, Vec<String>> = BTreeMap::new();
                    for e in list {
                        by_rank.entry(e.rank).or_default().push(self.names[e.other].clone());
                    }
                    by_rank.into_values().collect()
                };
                (self.names[v].clone(), groups)
            })
            .collect();
        let instance = Instance::from_lists(agents)?;
        let ids = self.names.iter().map(|s| instance.id(s).expect("agent exists")).collect();
        Ok(Built { instance, ids })
    }
}

/// `base` with primes appended until it is not taken.
pub(crate) fn fresh_name(taken: &dyn Fn(&str) -> bool, base: &str) -> String {
    let mut s = base.to_string();
    while taken(&s) {
        s.push('\'');
    }
    s
}
