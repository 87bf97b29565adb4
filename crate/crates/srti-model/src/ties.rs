use std::collections::BTreeMap;

use crate::error::ModelError;
use crate::instance::Instance;

/// Breaks one tie: group `group` (0-based) of `agent` becomes singletons in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieBreak {
    pub agent: usize,
    pub group: usize,
    pub order: Vec<usize>,
}

/// Replaces each selected tie by a strict order; the acceptability graph is unchanged.
pub fn break_ties(inst: &Instance, selection: &[TieBreak]) -> Result<Instance, ModelError> {
    let mut per_agent: BTreeMap<usize, BTreeMap<usize, &Vec<usize>>> = BTreeMap::new();
    for tb in selection {
        let lists = inst
            .names()
            .get(tb.agent)
            .map(|_| inst.lists(tb.agent))
            .ok_or_else(|| ModelError::InvalidSelection(format!("agent {} out of range", tb.agent)))?;
        let group = lists.get(tb.group).ok_or_else(|| {
            ModelError::InvalidSelection(format!(
                "agent `{}` has no group {}",
                inst.name(tb.agent),
                tb.group + 1
            ))
        })?;
        let mut a = group.clone();
        let mut b = tb.order.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(ModelError::InvalidSelection(format!(
                "order for group {} of `{}` is not a bijection onto the tie",
                tb.group + 1,
                inst.name(tb.agent)
            )));
        }
        if per_agent.entry(tb.agent).or_default().insert(tb.group, &tb.order).is_some() {
            return Err(ModelError::InvalidSelection(format!(
                "group {} of `{}` selected twice",
                tb.group + 1,
                inst.name(tb.agent)
            )));
        }
    }
    let mut lists: Vec<Vec<Vec<usize>>> = (0..inst.n()).map(|v| inst.lists(v).to_vec()).collect();
    for (v, groups) in per_agent {
        // Highest index first so earlier group indices stay valid.
        for (i, order) in groups.into_iter().rev() {
            let singles = order.iter().map(|&w| vec![w]);
            lists[v].splice(i..=i, singles);
        }
    }
    Ok(inst.with_lists(lists))
}

/// Breaks every tie in its listed order.
pub fn break_ties_first(inst: &Instance) -> Instance {
    let sel: Vec<TieBreak> = (0..inst.n())
        .flat_map(|v| {
            inst.lists(v)
                .iter()
                .enumerate()
                .filter(|(_, g)| g.len() > 1)
                .map(move |(i, g)| TieBreak { agent: v, group: i, order: g.clone() })
                .collect::<Vec<_>>()
        })
        .collect();
    break_ties(inst, &sel).expect("listed order is always a valid selection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_instance, serialize_instance};

    #[test]
    fn reversed_tie_becomes_strict() {
        let inst = parse_instance("a : (b c) d\nb : a\nc : a\nd : a\n").unwrap();
        let (a, b, c) = (0, 1, 2);
        let out = break_ties(&inst, &[TieBreak { agent: a, group: 0, order: vec![c, b] }]).unwrap();
        assert_eq!(serialize_instance(&out).lines().next().unwrap(), "a : c b d");
        assert_eq!(out.graph(), inst.graph());
        assert_eq!(out.rk(a, 3), 3);
    }

    #[test]
    fn empty_selection_is_identity() {
        let inst = parse_instance("a : (b c)\nb : a\nc : a\n").unwrap();
        let out = break_ties(&inst, &[]).unwrap();
        assert_eq!(serialize_instance(&out), serialize_instance(&inst));
    }

    #[test]
    fn non_bijection_is_rejected() {
        let inst = parse_instance("a : (b c)\nb : a\nc : a\n").unwrap();
        let err = break_ties(&inst, &[TieBreak { agent: 0, group: 0, order: vec![1, 1] }]);
        assert!(matches!(err, Err(ModelError::InvalidSelection(_))));
    }
}
