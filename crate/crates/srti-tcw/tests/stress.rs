use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srti_graph::{validate_tcd, TreeCutDecomposition};
use srti_model::{Instance, InstanceBuilder};
use srti_tcw::{compute_tables, DpContext, Mode, SolveOptions};

/// A hub bag with many small pendant groups, so light classes get large.
fn hub_instance(rng: &mut ChaCha8Rng) -> (Instance, TreeCutDecomposition) {
    let hub = rng.gen_range(1..=3);
    let groups = rng.gen_range(1..=4);
    let mut b = InstanceBuilder::new();
    let hubs: Vec<usize> = (0..hub).map(|i| b.agent(&format!("h{i}"))).collect();
    let mut members = Vec::new();
    for gi in 0..groups {
        let size = rng.gen_range(1..=2);
        let vs: Vec<usize> = (0..size).map(|j| b.agent(&format!("g{gi}x{j}"))).collect();
        if size == 2 {
            b.edge(vs[0], vs[1], rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap();
        }
        let contacts = rng.gen_range(1..=2);
        for _ in 0..contacts {
            let v = vs[rng.gen_range(0..size)];
            let x = hubs[rng.gen_range(0..hub)];
            if b.rank(v, x).is_none() {
                b.edge(v, x, rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap();
            }
        }
        members.push(vs);
    }
    for i in 0..hub {
        for j in i + 1..hub {
            if rng.gen_bool(0.5) {
                b.edge(hubs[i], hubs[j], rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap();
            }
        }
    }
    let inst = b.build().unwrap();
    let id = |name: &str| inst.id(name).unwrap();
    let mut parent = vec![None];
    let mut bags = vec![(0..hub).map(|i| id(&format!("h{i}"))).collect::<Vec<_>>()];
    for (gi, vs) in members.iter().enumerate() {
        parent.push(Some(0));
        bags.push((0..vs.len()).map(|j| id(&format!("g{gi}x{j}"))).collect());
    }
    (inst, TreeCutDecomposition::new(parent, bags))
}

/// Random graph on a random decomposition tree.
fn random_case(rng: &mut ChaCha8Rng) -> (Instance, TreeCutDecomposition) {
    let n = rng.gen_range(2..=8);
    let k = rng.gen_range(1..=n);
    let mut b = InstanceBuilder::new();
    let vs: Vec<usize> = (0..n).map(|i| b.agent(&format!("a{i}"))).collect();
    let p = rng.gen_range(0.2..0.6);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                b.edge(vs[i], vs[j], rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap();
            }
        }
    }
    let inst = b.build().unwrap();
    let parent: Vec<Option<usize>> = (0..k).map(|t| if t == 0 { None } else { Some(rng.gen_range(0..t)) }).collect();
    let mut bags = vec![Vec::new(); k];
    for i in 0..n {
        bags[rng.gen_range(0..k)].push(inst.id(&format!("a{i}")).unwrap());
    }
    (inst, TreeCutDecomposition::new(parent, bags))
}

fn compare(inst: &Instance, tcd: &TreeCutDecomposition, label: &str) {
    if validate_tcd(inst.graph(), tcd).is_err() {
        return;
    }
    let Ok(ctx) = DpContext::new(inst, tcd) else { return };
    for mode in [Mode::Existence, Mode::Perfect] {
        let fast = compute_tables(&ctx, mode, SolveOptions::default());
        let slow = compute_tables(&ctx, mode, SolveOptions { threads: 1, exhaustive: true });
        for t in 0..tcd.len() {
            assert_eq!(
                fast[t].as_ref().unwrap().sig(),
                slow[t].as_ref().unwrap().sig(),
                "{label}: node {t}, {mode:?}\n{}\n{tcd:?}",
                srti_model::serialize_instance(inst)
            );
        }
    }
}

#[test]
fn hub_nodes_match_exhaustive_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..300 {
        let (inst, tcd) = hub_instance(&mut rng);
        compare(&inst, &tcd, &format!("hub {i}"));
    }
}

#[test]
fn random_decompositions_match_exhaustive_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..300 {
        let (inst, tcd) = random_case(&mut rng);
        compare(&inst, &tcd, &format!("random {i}"));
    }
}
