//! Instance transformations between Max-, Perfect- and Existence-SRTI.

use std::collections::HashSet;

use srti_model::{Instance, Matching};

use crate::emit::fresh_name;
use crate::error::GadgetError;

type Lists = Vec<(String, Vec<Vec<String>>)>;

fn raw_lists(inst: &Instance) -> Lists {
    inst.listing()
        .iter()
        .map(|&v| {
            let groups = inst
                .lists(v)
                .iter()
                .map(|g| g.iter().map(|&w| inst.name(w).to_string()).collect())
                .collect();
            (inst.name(v).to_string(), groups)
        })
        .collect()
}

fn fresh(taken: &mut HashSet<String>, base: &str) -> String {
    let s = fresh_name(&|s| taken.contains(s), base);
    taken.insert(s.clone());
    s
}

/// Names of the universal agents `perfectize` adds, in order.
pub fn perfectize_names(inst: &Instance, k: usize) -> Vec<String> {
    let mut taken: HashSet<String> = inst.names().iter().cloned().collect();
    (1..=k).map(|i| fresh(&mut taken, &format!("x{i}"))).collect()
}

/// Adds `k` universal agents `x_1..x_k`: `x_i` ranks the `j`-th agent (index
/// order) at `j`, and every agent ranks `x_i` right after its own list, at
/// `maxrk + i`.
pub fn perfectize(inst: &Instance, k: usize) -> Instance {
    if k == 0 {
        return inst.clone();
    }
    let xs = perfectize_names(inst, k);
    let mut lists = raw_lists(inst);
    for (_, groups) in &mut lists {
        groups.extend(xs.iter().map(|x| vec![x.clone()]));
    }
    for x in &xs {
        lists.push((x.clone(), inst.names().iter().map(|s| vec![s.clone()]).collect()));
    }
    Instance::from_lists(lists).expect("fresh names keep the instance valid")
}

/// Extends a stable matching of `inst` leaving exactly `k` agents uncovered
/// to a perfect matching of `perfectize(inst, k)`: the `i`-th uncovered
/// agent (index order) is matched to `x_i`.
pub fn perfectize_matching(inst: &Instance, k: usize, m: &Matching) -> Result<(Instance, Matching), GadgetError> {
    let out = perfectize(inst, k);
    let mate = m.mates(inst.graph());
    let free: Vec<usize> = (0..inst.n()).filter(|&v| mate[v].is_none()).collect();
    if free.len() != k {
        return Err(GadgetError::OutOfRange(format!(
            "matching leaves {} agents uncovered, expected {k}",
            free.len()
        )));
    }
    let g = out.graph();
    let id = |v: usize| out.id(inst.name(v)).expect("kept agent");
    let mut edges: Vec<usize> = m
        .pairs(inst.graph())
        .into_iter()
        .map(|(a, b)| g.edge_between(id(a), id(b)).expect("kept edge"))
        .collect();
    for (v, x) in free.into_iter().zip(perfectize_names(inst, k)) {
        let xi = out.id(&x).expect("added agent");
        edges.push(g.edge_between(id(v), xi).expect("universal edge"));
    }
    let pm = Matching::new(g, edges)?;
    Ok((out, pm))
}

/// Guard triangle per agent `v`: new `v'`, `v''` with `rk_v(v') = α+1`,
/// `rk_v(v'') = α+2`, `rk_{v'}(v'') = 1`, `rk_{v'}(v) = 2`, `rk_{v''}(v) = 1`,
/// `rk_{v''}(v') = 2`, where `α` is `v`'s worst rank.
pub fn existencefy(inst: &Instance) -> Instance {
    let mut taken: HashSet<String> = inst.names().iter().cloned().collect();
    let guards: Vec<(String, String)> = (0..inst.n())
        .map(|v| {
            let a = fresh(&mut taken, &format!("{}'", inst.name(v)));
            let b = fresh(&mut taken, &format!("{}''", inst.name(v)));
            (a, b)
        })
        .collect();
    let mut lists = raw_lists(inst);
    for (name, groups) in &mut lists {
        let (a, b) = &guards[inst.id(name).expect("agent")];
        groups.push(vec![a.clone()]);
        groups.push(vec![b.clone()]);
    }
    for (v, (a, b)) in guards.iter().enumerate() {
        let name = inst.name(v).to_string();
        lists.push((a.clone(), vec![vec![b.clone()], vec![name.clone()]]));
        lists.push((b.clone(), vec![vec![name], vec![a.clone()]]));
    }
    Instance::from_lists(lists).expect("fresh names keep the instance valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use srti_model::parse_instance;

    #[test]
    fn guard_names_avoid_existing_agents() {
        let inst = parse_instance("a: a'\na': a\n").unwrap();
        let out = existencefy(&inst);
        assert_eq!(out.n(), 6);
        let a = out.id("a").unwrap();
        assert_eq!(out.rk(a, out.id("a'").unwrap()), 1);
        assert_eq!(out.rk(a, out.id("a''").unwrap()), 2);
        assert_eq!(out.rk(a, out.id("a'''").unwrap()), 3);
    }

    #[test]
    fn perfectize_ranks() {
        let inst = parse_instance("a: b\nb: a\nc:\n").unwrap();
        let out = perfectize(&inst, 2);
        let x2 = out.id("x2").unwrap();
        assert_eq!(out.rk(x2, out.id("c").unwrap()), 3);
        assert_eq!(out.rk(out.id("a").unwrap(), x2), 3);
        assert_eq!(out.rk(out.id("c").unwrap(), x2), 2);
    }
}
