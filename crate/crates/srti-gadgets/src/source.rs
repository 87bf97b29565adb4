use srti_model::Graph;

use crate::error::GadgetError;

/// Parses a source graph: a `vertices <n>` line, then one `u v` line per
/// edge with labels in `1..=n`. Blank lines and `#` comments are ignored.
/// Vertex `v` of the text becomes index `v - 1`.
pub fn parse_graph(text: &str) -> Result<Graph, GadgetError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| GadgetError::GraphSyntax { line, msg };
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some(n) = n else {
            match toks.as_slice() {
                ["vertices", c] => {
                    n = Some(c.parse().map_err(|_| err(format!("bad vertex count `{c}`")))?);
                    continue;
                }
                _ => return Err(err("expected `vertices <n>`".into())),
            }
        };
        let [a, b] = toks.as_slice() else {
            return Err(err(format!("expected `u v`, got `{body}`")));
        };
        let label = |s: &str| -> Result<usize, GadgetError> {
            match s.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(err(format!("vertex label `{s}` is not in 1..={n}"))),
            }
        };
        let (u, v) = (label(a)?, label(b)?);
        if u == v {
            return Err(err(format!("self-loop at {a}")));
        }
        edges.push((u.min(v), u.max(v)));
    }
    let n = n.ok_or(GadgetError::GraphSyntax { line: 0, msg: "missing `vertices <n>` line".into() })?;
    let before = edges.len();
    edges.sort_unstable();
    edges.dedup();
    if edges.len() != before {
        return Err(GadgetError::GraphSyntax { line: 0, msg: "duplicate edge".into() });
    }
    Ok(Graph::new(n, edges))
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut s = format!("vertices {}\n", g.n());
    for &[a, b] in g.edges() {
        s.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    s
}

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
}

/// Sorted clique, validated against `g` and the required size.
pub(crate) fn check_clique(g: &Graph, k: usize, clique: &[usize]) -> Result<Vec<usize>, GadgetError> {
    let mut c = clique.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.len() != clique.len() || c.len() != k {
        return Err(GadgetError::NotAClique(format!("need {k} distinct vertices")));
    }
    if let Some(&v) = c.iter().find(|&&v| v >= g.n()) {
        return Err(GadgetError::NotAClique(format!("vertex {} is not in the graph", v + 1)));
    }
    for (i, &a) in c.iter().enumerate() {
        for &b in &c[i + 1..] {
            if g.edge_between(a, b).is_none() {
                return Err(GadgetError::NotAClique(format!("{} and {} are not adjacent", a + 1, b + 1)));
            }
        }
    }
    Ok(c)
}

/// Directed edges `(v, w)` of the bidirected graph: each edge in canonical
/// order, first as stored, then reversed.
pub(crate) fn arcs(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().iter().flat_map(|&[a, b]| [(a, b), (b, a)]).collect()
}
