use srti_graph::{parse_tcd, TreeCutDecomposition};
use srti_model::{Instance, InstanceBuilder, Matching, INF};
use srti_tcw::*;
use srti_twosat::{Lit, TwoSatFormula};

/// Agents rank their neighbors strictly by name.
fn by_name(names: &[&str], edges: &[(&str, &str)]) -> Instance {
    let mut sorted: Vec<&str> = names.to_vec();
    sorted.sort();
    let mut b = InstanceBuilder::new();
    for s in &sorted {
        b.agent(s);
    }
    let nbrs = |v: &str| {
        let mut out: Vec<&str> = edges
            .iter()
            .filter_map(|&(a, c)| if a == v { Some(c) } else if c == v { Some(a) } else { None })
            .collect();
        out.sort();
        out
    };
    for &(a, c) in edges {
        let ra = nbrs(a).iter().position(|&x| x == c).unwrap() as u32 + 1;
        let rc = nbrs(c).iter().position(|&x| x == a).unwrap() as u32 + 1;
        let (ia, ic) = (b.lookup(a).unwrap(), b.lookup(c).unwrap());
        b.edge(ia, ic, ra, rc).unwrap();
    }
    b.build().unwrap()
}

fn tcd_of(inst: &Instance, text: &str) -> TreeCutDecomposition {
    parse_tcd(text, |s| inst.id(s)).unwrap()
}

fn node(tcd: &TreeCutDecomposition, name: &str) -> usize {
    tcd.names.iter().position(|s| s == name).unwrap()
}

/// Root `{w}` above a leaf `{v}` joined by one edge.
fn pendant() -> (Instance, TreeCutDecomposition) {
    let inst = by_name(&["v", "w"], &[("v", "w")]);
    let tcd = tcd_of(&inst, "node r : w\nnode t : v\nedge r t\nroot r\n");
    (inst, tcd)
}

#[test]
fn complies_on_a_pendant_leaf() {
    let (inst, tcd) = pendant();
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let t = node(&tcd, "t");
    let e = Matching::new(inst.graph(), vec![0]).unwrap();
    let none = Matching::empty();
    assert!(complies(&ctx, t, &e, &[0], Mode::Existence).unwrap());
    assert!(!complies(&ctx, t, &none, &[1], Mode::Existence).unwrap());
    assert!(complies(&ctx, t, &none, &[-1], Mode::Existence).unwrap());
    assert!(complies(&ctx, t, &none, &[0, 1], Mode::Existence).is_err());
}

#[test]
fn leaf_tables_of_a_pendant_leaf() {
    let (inst, tcd) = pendant();
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let t = node(&tcd, "t");
    let table = leaf_table(&ctx, t, Mode::Existence);
    assert_eq!(table.sig(), vec![vec![-1], vec![0]]);
    let table = leaf_table(&ctx, t, Mode::Perfect);
    assert_eq!(table.sig(), vec![vec![0]]);
}

#[test]
fn isolated_leaf_stores_the_empty_matching() {
    let inst = by_name(&["a", "b"], &[]);
    let tcd = tcd_of(&inst, "node r : a\nnode t : b\nedge r t\nroot r\n");
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let table = leaf_table(&ctx, node(&tcd, "t"), Mode::Existence);
    assert_eq!(table.get(&[]), Some(&Matching::empty()));
}

/// Bag `{x, y}` with pendant leaves; `leaves` lists each leaf's neighbors.
fn hub(leaves: &[&[&str]]) -> (Instance, TreeCutDecomposition) {
    let mut names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    let mut edges = Vec::new();
    for (i, nb) in leaves.iter().enumerate() {
        names.push(format!("c{i}"));
        for &x in *nb {
            edges.push((format!("c{i}"), x.to_string()));
        }
    }
    let nref: Vec<&str> = names.iter().map(String::as_str).collect();
    let eref: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let inst = by_name(&nref, &eref);
    let mut text = String::from("node r : z\nnode t : x y\nedge r t\nroot r\n");
    for i in 0..leaves.len() {
        text.push_str(&format!("node n{i} : c{i}\nedge t n{i}\n"));
    }
    let tcd = tcd_of(&inst, &text);
    (inst, tcd)
}

fn child_tables(ctx: &DpContext, mode: Mode) -> Vec<Option<DpTable>> {
    let mut tables = vec![None; ctx.tcd.len()];
    for t in 0..ctx.tcd.len() {
        if ctx.info.children[t].is_empty() {
            tables[t] = Some(leaf_table(ctx, t, mode));
        }
    }
    tables
}

#[test]
fn classes_group_children_by_signature_and_neighbors() {
    let (inst, tcd) = hub(&[&["x"], &["x"]]);
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let part = light_classes(&ctx, node(&tcd, "t"), &child_tables(&ctx, Mode::Existence));
    assert_eq!(part.classes.len(), 1);
    assert_eq!(part.classes[0].members.len(), 2);
    assert!(!part.no_instance);

    let (inst, tcd) = hub(&[&["x"], &["y"]]);
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let part = light_classes(&ctx, node(&tcd, "t"), &child_tables(&ctx, Mode::Existence));
    assert_eq!(part.classes.len(), 2);
}

#[test]
fn three_children_that_must_be_matched_prune_the_node() {
    let (inst, tcd) = hub(&[&["x", "y"], &["x", "y"], &["x", "y"]]);
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let t = node(&tcd, "t");
    let part = light_classes(&ctx, t, &child_tables(&ctx, Mode::Perfect));
    assert_eq!(part.classes.len(), 1);
    assert!(part.no_instance);
    let tables = child_tables(&ctx, Mode::Perfect);
    assert_eq!(induction_step(&ctx, t, &[-1], &tables, Mode::Perfect), None);
}

fn class(nbrs: Vec<usize>, ranks: &[(u32, u32)], sig: Vec<Vec<i8>>) -> ChildClass {
    let mut sig = sig;
    sig.sort();
    let contacts = ranks
        .iter()
        .enumerate()
        .map(|(i, &(rx, ry))| {
            let mut c = vec![Contact { edge: 10 * i, inner: 100 + i, outer: nbrs[0], rank: rx, coord: 0 }];
            if nbrs.len() == 2 {
                c.push(Contact { edge: 10 * i + 1, inner: 100 + i, outer: nbrs[1], rank: ry, coord: 1 });
            }
            c
        })
        .collect();
    ChildClass { members: (0..ranks.len()).collect(), contacts, nbrs, sig }
}

fn nm(pairs: &[(usize, usize)]) -> NodeMatching {
    NodeMatching { pairs: pairs.iter().copied().collect() }
}

#[test]
fn classification_follows_the_bad_class_rules() {
    let single = class(vec![0], &[(1, 0)], vec![vec![-1], vec![0]]);
    assert_eq!(classify_class(&single, 0, &nm(&[(0, 0)])), ClassKind::Good);
    assert_eq!(classify_class(&single, 0, &nm(&[])), ClassKind::Unmatched);

    let one_sided = class(vec![0, 1], &[(1, 1)], vec![vec![-1, -1], vec![-1, 1], vec![0, -1], vec![1, -1], vec![1, 1]]);
    assert_eq!(classify_class(&one_sided, 0, &nm(&[(0, 0)])), ClassKind::Bad);
    assert_eq!(classify_class(&one_sided, 0, &nm(&[(0, 0), (1, 5)])), ClassKind::Bad);
    assert_eq!(classify_class(&one_sided, 0, &nm(&[])), ClassKind::Unmatched);

    let two_sided = class(vec![0, 1], &[(1, 1)], vec![vec![-1, -1], vec![-1, 0], vec![1, -1], vec![-1, 1], vec![0, 0]]);
    assert_eq!(classify_class(&two_sided, 0, &nm(&[(0, 0), (1, 0)])), ClassKind::Bad);
    let mut both = two_sided.clone();
    both.sig.push(vec![0, -1]);
    both.sig.sort();
    assert_eq!(classify_class(&both, 0, &nm(&[(0, 0), (1, 0)])), ClassKind::Good);
}

#[test]
fn bad_chains_drop_dominated_children() {
    let sig = vec![vec![-1, -1], vec![-1, 1], vec![0, -1], vec![1, -1], vec![1, 1]];
    let dominated = class(vec![0, 1], &[(1, 3), (2, 2)], sig.clone());
    let chain = reduce_bad_class(&dominated, 0, &nm(&[(0, 0)]));
    assert_eq!(chain.len(), 1);
    assert_eq!((chain[0].x_rank, chain[0].y_rank), (1, 3));

    let monotone = class(vec![0, 1], &[(1, 2), (2, 3)], sig);
    let chain = reduce_bad_class(&monotone, 0, &nm(&[(0, 0)]));
    let points: Vec<(u32, u32)> = chain.iter().map(|o| (o.x_rank, o.y_rank)).collect();
    assert_eq!(points, vec![(1, 2), (2, 3)]);
}

#[test]
fn good_candidates_pick_the_best_ranked_child() {
    let single = class(vec![0], &[(1, 0)], vec![vec![-1], vec![0]]);
    assert_eq!(good_class_candidates(&single, 0, &nm(&[(0, 0)])), vec![0]);
    let five = class(vec![0], &[(4, 0), (2, 0), (5, 0), (1, 0), (3, 0)], vec![vec![-1], vec![0]]);
    assert_eq!(good_class_candidates(&five, 0, &nm(&[(0, 0)])), vec![3]);
    let front = class_front(&five, 0, &nm(&[(0, 0)]));
    assert_eq!(front[0].x_rank, 1);
}

#[test]
fn heavy_family_contains_both_paddings() {
    // Child {v, u} hangs below bag {x}; v also sees w in the root, so the child is heavy.
    let inst = by_name(&["u", "v", "w", "x"], &[("v", "u"), ("v", "x"), ("v", "w")]);
    let tcd = tcd_of(&inst, "node r : w\nnode t : x\nnode c : u v\nedge r t\nedge t c\nroot r\n");
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let (t, c) = (node(&tcd, "t"), node(&tcd, "c"));
    let tables = child_tables(&ctx, Mode::Existence);
    let family = heavy_candidate_family(&ctx, t, &[-1], &tables);
    let g = inst.graph();
    let (v, x) = (inst.id("v").unwrap(), inst.id("x").unwrap());
    let i = ctx.cut(c).binary_search(&g.edge_between(v, x).unwrap()).unwrap();
    let unmatched: Vec<i8> = family.iter().filter(|f| f.edges.is_empty()).map(|f| f.vectors[0][i]).collect();
    assert!(unmatched.contains(&-1) && unmatched.contains(&1));
    // Matching v to x would leave {u, v} blocking inside the child.
    assert!(family.iter().all(|f| f.edges.is_empty()));
}

#[test]
fn heavy_family_without_heavy_children_is_trivial() {
    let (inst, tcd) = hub(&[&["x"]]);
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let family = heavy_candidate_family(&ctx, node(&tcd, "t"), &[], &child_tables(&ctx, Mode::Existence));
    assert_eq!(family, vec![HeavyChoice { edges: vec![], vectors: vec![] }]);
}

#[test]
fn all_absent_children_make_the_node_absent() {
    let (inst, tcd) = hub(&[&["x"]]);
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let t = node(&tcd, "t");
    let mut tables = vec![None; tcd.len()];
    let c = node(&tcd, "n0");
    tables[c] = Some(DpTable::new(c, ctx.cut(c).to_vec()));
    for h in all_vectors(ctx.cut(t).len()) {
        assert_eq!(induction_step(&ctx, t, &h, &tables, Mode::Existence), None);
    }
}

fn sample() -> (Instance, TreeCutDecomposition) {
    let names = ["r1", "r2", "v11", "v12", "v13", "v14", "v15", "v21", "v22", "v3", "v41", "v42", "v43"];
    let edges = [
        ("v11", "v12"), ("v12", "v14"), ("v14", "v15"), ("v15", "v13"), ("v12", "v3"),
        ("v3", "v14"), ("v3", "v15"), ("v21", "v22"), ("v22", "v11"), ("v21", "r1"),
        ("v15", "v42"), ("v41", "v42"), ("v42", "v43"), ("v41", "v43"), ("v42", "v13"),
        ("v13", "r2"),
    ];
    let inst = by_name(&names, &edges);
    let tcd = tcd_of(
        &inst,
        "node r : r1 r2\nnode t1 : v11 v12 v13 v14 v15\nnode t2 : v21 v22\nnode t3 : v3\n\
         node t4 : v41 v42 v43\nedge r t1\nedge t1 t2\nedge t1 t3\nedge t1 t4\nroot r\n",
    );
    (inst, tcd)
}

#[test]
fn sample_node_t3_rejects_a_promise_to_its_favorite() {
    let (inst, tcd) = sample();
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let t3 = node(&tcd, "t3");
    let g = inst.graph();
    let e = g.edge_between(inst.id("v3").unwrap(), inst.id("v12").unwrap()).unwrap();
    let i = ctx.cut(t3).binary_search(&e).unwrap();
    let table = leaf_table(&ctx, t3, Mode::Existence);
    for h in all_vectors(ctx.cut(t3).len()) {
        if h[i] == 1 {
            assert!(!table.contains(&h), "{h:?}");
        }
    }
}

#[test]
fn sample_node_t4_cannot_match_v42_twice() {
    let (inst, tcd) = sample();
    let ctx = DpContext::new(&inst, &tcd).unwrap();
    let t4 = node(&tcd, "t4");
    assert_eq!(ctx.cut(t4).len(), 2);
    let table = leaf_table(&ctx, t4, Mode::Existence);
    assert!(!table.contains(&[0, 0]));
}

#[test]
fn worked_two_sat_example_is_reproduced() {
    let free = PeeVertex { maxrk: 2, status: PeeStatus::Free };
    let rank = |vertex, rank| Coord::Rank { vertex, rank };
    let all_but = |bad: &[[i8; 2]]| -> Vec<HVector> {
        all_vectors(2).filter(|v| !bad.iter().any(|b| b[..] == v[..])).collect()
    };
    let input = PeeInput {
        vertices: vec![PeeVertex { maxrk: 2, status: PeeStatus::Matched(2) }, free, free, free],
        perfect: false,
        caps: vec![],
        xt_edges: vec![((1, 2), (2, 2))],
        children: vec![
            PeeChild { coords: vec![Coord::Zero, rank(1, 2)], allowed: all_but(&[[1, 1], [0, 1]]) },
            PeeChild { coords: vec![rank(0, 1), rank(1, 2)], allowed: all_but(&[[1, 1], [0, 1]]) },
            PeeChild { coords: vec![rank(0, 1), rank(1, 2)], allowed: vec![vec![-1, -1], vec![1, -1]] },
            PeeChild { coords: vec![rank(1, 2), rank(2, 1)], allowed: vec![vec![-1, -1], vec![1, -1], vec![-1, 1]] },
            PeeChild { coords: vec![rank(2, 1), rank(3, 2)], allowed: vec![vec![-1, -1]] },
        ],
        bad: vec![
            BadChain::Double { x: 1, y: 2, points: vec![(1, 2), (2, 1)] },
            BadChain::Single { x: 3, y: 2, points: vec![(1, 1), (2, 2)] },
        ],
    };
    let f = build_pee_2sat(&input).unwrap();
    let x = |i: usize, j: u32| f.var(i - 1, j);
    let mut want = TwoSatFormula::new(8);
    for i in 1..=4 {
        want.add_clause(x(i, 1), x(i, 2).negate());
    }
    want.add_unit(x(1, 1));
    for i in 1..=4 {
        want.add_unit(x(i, 2).negate());
    }
    want.add_clause(x(2, 1), x(3, 1));
    want.add_clause(x(3, 1).negate(), x(4, 1));
    want.add_clause(x(3, 2).negate(), x(4, 2));
    want.add_clause(x(2, 2).negate(), x(3, 2).negate());
    want.add_clause(x(2, 2).negate(), x(3, 1).negate());
    want.add_unit(x(3, 1).negate());
    assert_eq!(f.formula.clause_set(), want.clause_set());
    let a = srti_twosat::solve(&f.formula).unwrap();
    let ranks = f.decode(&a);
    assert_eq!((ranks[0], ranks[1], ranks[2]), (2, 2, 1));
    assert_eq!(f.var_names()[0], (0, 1));
    let _ = Lit::pos(0);
}

#[test]
fn fixed_embedding_yields_only_unit_clauses() {
    let input = PeeInput {
        vertices: vec![
            PeeVertex { maxrk: 3, status: PeeStatus::Matched(2) },
            PeeVertex { maxrk: 1, status: PeeStatus::Unmatched },
        ],
        ..PeeInput::default()
    };
    let f = build_pee_2sat(&input).unwrap();
    let units: Vec<_> = f.formula.clause_set().into_iter().filter(|(a, b)| a == b).collect();
    assert_eq!(units.len(), 3);
    assert_eq!(f.decode(&srti_twosat::solve(&f.formula).unwrap()), vec![2, INF]);
    let perfect = PeeInput { perfect: true, ..input };
    assert!(build_pee_2sat(&perfect).is_err());
}
