use std::collections::HashMap;

use crate::error::TcdError;
use crate::tcd::TreeCutDecomposition;

/// Parses `node ID : v …`, `edge ID ID` and `root ID` lines; `resolve` maps
/// vertex identifiers to indices.
pub fn parse_tcd(
    text: &str,
    resolve: impl Fn(&str) -> Option<usize>,
) -> Result<TreeCutDecomposition, TcdError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut edges: Vec<(String, String, usize)> = Vec::new();
    let mut root: Option<(String, usize)> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        let err = |msg: String| TcdError::Syntax { line, msg };
        match words.as_slice() {
            [] => {}
            ["node", id, ":", verts @ ..] => {
                if index.contains_key(*id) {
                    return Err(err(format!("node `{id}` declared twice")));
                }
                let mut bag = Vec::with_capacity(verts.len());
                for v in verts {
                    bag.push(resolve(v).ok_or_else(|| err(format!("unknown vertex `{v}`")))?);
                }
                bag.sort_unstable();
                index.insert(id.to_string(), names.len());
                names.push(id.to_string());
                bags.push(bag);
            }
            ["edge", a, b] => edges.push((a.to_string(), b.to_string(), line)),
            ["root", id] => root = Some((id.to_string(), line)),
            _ => return Err(err("expected `node ID : …`, `edge ID ID` or `root ID`".into())),
        }
    }
    let k = names.len();
    let node = |id: &str, line: usize| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| TcdError::Syntax { line, msg: format!("unknown node `{id}`") })
    };
    let (root_name, root_line) = root.ok_or_else(|| TcdError::NotATree("no root line".into()))?;
    let r = node(&root_name, root_line)?;
    let mut adj = vec![Vec::new(); k];
    for (a, b, line) in &edges {
        let (a, b) = (node(a, *line)?, node(b, *line)?);
        adj[a].push(b);
        adj[b].push(a);
    }
    if edges.len() + 1 != k {
        return Err(TcdError::NotATree(format!("{k} nodes but {} edges", edges.len())));
    }
    let mut parent = vec![None; k];
    let mut seen = vec![false; k];
    seen[r] = true;
    let mut stack = vec![r];
    while let Some(t) = stack.pop() {
        for &s in &adj[t] {
            if !seen[s] {
                seen[s] = true;
                parent[s] = Some(t);
                stack.push(s);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(TcdError::NotATree("tree is disconnected".into()));
    }
    Ok(TreeCutDecomposition { names, parent, bags, root: r })
}

/// Writes the decomposition; `vertex` names graph vertices.
pub fn serialize_tcd(tcd: &TreeCutDecomposition, vertex: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (t, bag) in tcd.bags.iter().enumerate() {
        out.push_str(&format!("node {} :", tcd.names[t]));
        for &v in bag {
            out.push(' ');
            out.push_str(&vertex(v));
        }
        out.push('\n');
    }
    for (t, p) in tcd.parent.iter().enumerate() {
        if let Some(p) = p {
            out.push_str(&format!("edge {} {}\n", tcd.names[*p], tcd.names[t]));
        }
    }
    out.push_str(&format!("root {}\n", tcd.names[tcd.root]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Option<usize> {
        s.strip_prefix('v')?.parse().ok()
    }

    #[test]
    fn round_trip() {
        let tcd = TreeCutDecomposition::new(vec![None, Some(0), Some(0)], vec![vec![], vec![0, 1], vec![2]]);
        let text = serialize_tcd(&tcd, |v| format!("v{v}"));
        assert_eq!(text, "node 0 :\nnode 1 : v0 v1\nnode 2 : v2\nedge 0 1\nedge 0 2\nroot 0\n");
        assert_eq!(parse_tcd(&text, idx).unwrap(), tcd);
    }

    #[test]
    fn rejects_bad_trees() {
        assert!(parse_tcd("node a : v0\nnode b :\nroot a\n", idx).is_err());
        assert!(parse_tcd("node a : v9x\nroot a\n", idx).is_err());
        assert!(parse_tcd("node a : v0\n", idx).is_err());
        assert!(parse_tcd("node a :\nnode b :\nedge a b\nedge b a\nroot a\n", idx).is_err());
    }
}
