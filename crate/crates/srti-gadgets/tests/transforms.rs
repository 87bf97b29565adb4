use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srti_gadgets::*;
use srti_model::{break_ties, break_ties_first, is_stable, parse_instance, Instance, Matching, TieBreak};
use srti_oracle::{brute_solve_capped, random_instance, stable_matchings, SolveMode};

const CAP: usize = 64;

fn max_size(inst: &Instance) -> Option<usize> {
    brute_solve_capped(inst, SolveMode::Max, CAP).unwrap().map(|m| m.len())
}

#[test]
fn perfectize_zero_is_identity() {
    let inst = random_instance(&mut ChaCha8Rng::seed_from_u64(3), 5, 0.5, 0.3);
    let out = perfectize(&inst, 0);
    assert_eq!(out.names(), inst.names());
    assert_eq!(out.graph().edges(), inst.graph().edges());
}

#[test]
fn perfectize_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut cases = 0;
    while cases < 60 {
        let n = rng.gen_range(2..=7);
        let inst = random_instance(&mut rng, n, 0.4, 0.3);
        let Some(max) = max_size(&inst) else { continue };
        let floor = n - 2 * max;
        // Any k not exceeding the least number of uncovered agents.
        for k in (0..=floor).filter(|k| (n - k) % 2 == 0) {
            let out = perfectize(&inst, k);
            let perfect = brute_solve_capped(&out, SolveMode::Perfect, CAP).unwrap().is_some();
            assert_eq!(perfect, max == (n - k) / 2, "n={n} k={k} max={max}");
        }
        let best = brute_solve_capped(&inst, SolveMode::Max, CAP).unwrap().unwrap();
        let (out, pm) = perfectize_matching(&inst, floor, &best).unwrap();
        assert!(srti_model::is_perfect(&out, &pm).unwrap());
        cases += 1;
    }
}

#[test]
fn existencefy_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..80 {
        let n = rng.gen_range(1..=6);
        let inst = random_instance(&mut rng, n, 0.5, 0.3);
        let out = existencefy(&inst);
        let perfect = brute_solve_capped(&inst, SolveMode::Perfect, CAP).unwrap();
        let exists = brute_solve_capped(&out, SolveMode::Existence, CAP).unwrap();
        assert_eq!(perfect.is_some(), exists.is_some());
        // A perfect stable matching plus the guard pairs is stable.
        if let Some(pm) = perfect {
            let g = out.graph();
            let mut edges: Vec<usize> = pm
                .pairs(inst.graph())
                .iter()
                .map(|&(a, b)| g.edge_between(out.id(inst.name(a)).unwrap(), out.id(inst.name(b)).unwrap()).unwrap())
                .collect();
            for v in 0..inst.n() {
                let a = out.id(&format!("{}'", inst.name(v))).unwrap();
                let b = out.id(&format!("{}''", inst.name(v))).unwrap();
                edges.push(g.edge_between(a, b).unwrap());
            }
            assert!(is_stable(&out, &Matching::new(g, edges).unwrap()).unwrap());
        }
        // Every stable matching of the guarded instance restricts
        // to a perfect stable matching.
        if n <= 4 {
            for m in stable_matchings(&out, CAP).unwrap() {
                let mut edges = Vec::new();
                for (a, b) in m.pairs(out.graph()) {
                    if let (Some(x), Some(y)) = (inst.id(out.name(a)), inst.id(out.name(b))) {
                        edges.push(inst.graph().edge_between(x, y).unwrap());
                    }
                }
                let r = Matching::new(inst.graph(), edges).unwrap();
                assert!(srti_model::is_perfect(&inst, &r).unwrap());
            }
        }
    }
}

#[test]
fn existencefy_empty_and_isolated() {
    assert_eq!(existencefy(&Instance::empty()).n(), 0);
    let inst = parse_instance("v:\n").unwrap();
    let out = existencefy(&inst);
    assert_eq!(out.n(), 3);
    // The lone guard triangle is cyclic: no stable matching, matching the
    // fact that a single agent has no perfect matching.
    assert!(stable_matchings(&out, CAP).unwrap().is_empty());
    let pair = existencefy(&parse_instance("u: v\nv: u\n").unwrap());
    let stable = stable_matchings(&pair, CAP).unwrap();
    assert!(!stable.is_empty());
    let (u, v) = (pair.id("u").unwrap(), pair.id("v").unwrap());
    for m in stable {
        assert_eq!(m.mates(pair.graph())[u], Some(v));
    }
}

#[test]
fn tie_breaking_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..150 {
        let n = rng.gen_range(2..=7);
        let inst = random_instance(&mut rng, n, 0.5, 0.6);
        let mut sel = Vec::new();
        for v in 0..inst.n() {
            for (i, g) in inst.lists(v).iter().enumerate() {
                if g.len() > 1 && rng.gen_bool(0.7) {
                    let mut order = g.clone();
                    for a in (1..order.len()).rev() {
                        order.swap(a, rng.gen_range(0..=a));
                    }
                    sel.push(TieBreak { agent: v, group: i, order });
                }
            }
        }
        for broken in [break_ties(&inst, &sel).unwrap(), break_ties_first(&inst)] {
            for m in stable_matchings(&broken, CAP).unwrap() {
                assert!(is_stable(&inst, &m).unwrap());
            }
        }
    }
}
