use srti_model::{is_perfect, is_stable, parse_instance, InstanceBuilder};
use srti_oracle::*;

#[test]
fn cyclic_triangle_has_none() {
    let inst = parse_instance("a : b c\nb : c a\nc : a b\n").unwrap();
    for mode in [SolveMode::Existence, SolveMode::Perfect, SolveMode::Max] {
        assert_eq!(brute_solve(&inst, mode).unwrap(), None);
    }
}

#[test]
fn mutual_pair_max() {
    let inst = parse_instance("a : b\nb : a\n").unwrap();
    let m = brute_solve(&inst, SolveMode::Max).unwrap().unwrap();
    assert_eq!(m.len(), 1);
}

/// The small vertex gadget used by the tree-cut hardness reduction, j = 1,
/// with its outgoing edge removed: a hub `w` with a two-vertex tail and a
/// center `c` carrying one four-vertex path.
#[test]
fn vertex_gadget_without_boundary_has_max_three() {
    let mut b = InstanceBuilder::new();
    let [w, w1, w2, c, p1, p2, p3, p4] =
        ["w", "w1", "w2", "c", "p1", "p2", "p3", "p4"].map(|s| b.agent(s));
    b.edge(w, c, 1, 2).unwrap();
    b.edge(w, w2, 2, 2).unwrap();
    b.edge(w, w1, 3, 1).unwrap();
    b.edge(w1, w2, 2, 1).unwrap();
    b.edge(c, p2, 1, 2).unwrap();
    b.edge(p2, p1, 3, 1).unwrap();
    b.edge(p2, p3, 1, 1).unwrap();
    b.edge(p3, p4, 1, 1).unwrap();
    let inst = b.build().unwrap();
    let m = brute_solve(&inst, SolveMode::Max).unwrap().unwrap();
    assert_eq!(m.len(), 3);
}

#[test]
fn random_properties_against_enumeration() {
    for seed in 0..300u64 {
        let n = (seed % 9) as usize + 1;
        let inst = random_instance_seeded(n, [0.3, 0.5, 0.7][seed as usize % 3], 0.3, seed);
        let cap = 64;
        let all = stable_matchings(&inst, cap).unwrap();
        let max = brute_solve_capped(&inst, SolveMode::Max, cap).unwrap();
        let ex = brute_solve_capped(&inst, SolveMode::Existence, cap).unwrap();
        let pf = brute_solve_capped(&inst, SolveMode::Perfect, cap).unwrap();
        assert_eq!(max.is_some(), !all.is_empty());
        assert_eq!(ex.is_some(), !all.is_empty());
        if let Some(m) = &max {
            assert!(is_stable(&inst, m).unwrap());
            assert!(all.iter().all(|s| s.len() <= m.len()));
            // Any stable matching is at least half a maximum one.
            assert!(all.iter().all(|s| 2 * s.len() >= m.len()));
        }
        if let Some(p) = &pf {
            assert!(is_perfect(&inst, p).unwrap());
            assert!(ex.is_some());
        }
        assert_eq!(pf.is_some(), all.iter().any(|s| 2 * s.len() == inst.n()));
    }
}

#[test]
fn seeded_generation_is_reproducible() {
    let a = random_instance_seeded(9, 0.4, 0.3, 7);
    let b = random_instance_seeded(9, 0.4, 0.3, 7);
    assert_eq!(srti_model::serialize_instance(&a), srti_model::serialize_instance(&b));
}
