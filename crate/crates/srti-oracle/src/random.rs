use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srti_model::{Graph, Instance, InstanceBuilder};

/// Erdős–Rényi graph G(n, p).
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    Graph::new(n, pairs)
}

/// Random instance on a G(n, `edge_prob`) graph; each agent orders its
/// neighbors uniformly and joins consecutive ones into a tie with `tie_prob`.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, edge_prob: f64, tie_prob: f64) -> Instance {
    let g = random_graph(rng, n, edge_prob);
    let width = n.saturating_sub(1).to_string().len();
    let mut b = InstanceBuilder::new();
    let ids: Vec<usize> = (0..n).map(|i| b.agent(&format!("v{i:0width$}"))).collect();
    let mut rank = vec![Vec::new(); n];
    for v in 0..n {
        let mut nbrs: Vec<usize> = g.adj(v).iter().map(|&(w, _)| w).collect();
        nbrs.shuffle(rng);
        let mut r = 0;
        let mut ranks = vec![0u32; n];
        for (i, &w) in nbrs.iter().enumerate() {
            if i == 0 || !rng.gen_bool(tie_prob) {
                r += 1;
            }
            ranks[w] = r;
        }
        rank[v] = ranks;
    }
    for &[a, b2] in g.edges() {
        b.edge(ids[a], ids[b2], rank[a][b2], rank[b2][a]).expect("fresh edge");
    }
    b.build().expect("generated instance is valid")
}

/// Reproducible variant keyed by `seed`.
pub fn random_instance_seeded(n: usize, edge_prob: f64, tie_prob: f64, seed: u64) -> Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, edge_prob, tie_prob)
}
