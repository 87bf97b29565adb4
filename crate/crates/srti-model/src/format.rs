use crate::error::ModelError;
use crate::instance::Instance;
use crate::matching::Matching;

#[derive(Debug, PartialEq, Eq)]
enum Tok<'a> {
    Word(&'a str),
    Colon,
    Open,
    Close,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        let special = matches!(c, ':' | '(' | ')');
        if c.is_whitespace() || special {
            if let Some(s) = start.take() {
                out.push(Tok::Word(&line[s..i]));
            }
            match c {
                ':' => out.push(Tok::Colon),
                '(' => out.push(Tok::Open),
                ')' => out.push(Tok::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok::Word(&line[s..]));
    }
    out
}

/// Parses the line-oriented instance format.
pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let mut agents = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let toks = tokenize(strip_comment(raw));
        if toks.is_empty() {
            continue;
        }
        let err = |msg: &str| ModelError::Syntax { line, msg: msg.to_string() };
        let name = match (&toks[0], toks.get(1)) {
            (Tok::Word(w), Some(Tok::Colon)) => w.to_string(),
            _ => return Err(err("expected `ID :`")),
        };
        let mut groups: Vec<Vec<String>> = Vec::new();
        let mut open: Option<Vec<String>> = None;
        for t in &toks[2..] {
            match t {
                Tok::Word(w) => match &mut open {
                    Some(g) => g.push(w.to_string()),
                    None => groups.push(vec![w.to_string()]),
                },
                Tok::Open if open.is_none() => open = Some(Vec::new()),
                Tok::Close => match open.take() {
                    Some(g) if !g.is_empty() => groups.push(g),
                    Some(_) => return Err(err("empty tie group")),
                    None => return Err(err("unbalanced `)`")),
                },
                Tok::Open => return Err(err("nested `(`")),
                Tok::Colon => return Err(err("unexpected `:`")),
            }
        }
        if open.is_some() {
            return Err(err("unclosed `(`"));
        }
        agents.push((name, groups));
    }
    Instance::from_lists(agents)
}

/// Writes the instance in listing order; ties are parenthesized.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    for &v in inst.listing() {
        out.push_str(inst.name(v));
        out.push_str(" :");
        for g in inst.lists(v) {
            out.push(' ');
            if g.len() == 1 {
                out.push_str(inst.name(g[0]));
            } else {
                out.push('(');
                let names: Vec<&str> = g.iter().map(|&w| inst.name(w)).collect();
                out.push_str(&names.join(" "));
                out.push(')');
            }
        }
        out.push('\n');
    }
    out
}

/// Parses one `ID ID` pair per line.
pub fn parse_matching(text: &str, inst: &Instance) -> Result<Matching, ModelError> {
    let g = inst.graph();
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let words: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let err = |msg: String| ModelError::Syntax { line: no + 1, msg };
        if words.len() != 2 {
            return Err(err("expected `ID ID`".to_string()));
        }
        let id = |w: &str| inst.id(w).ok_or_else(|| err(format!("unknown agent `{w}`")));
        let (a, b) = (id(words[0])?, id(words[1])?);
        let e = g.edge_between(a, b).ok_or_else(|| {
            ModelError::InvalidMatching(format!("{{{}, {}}} is not an acceptable pair", words[0], words[1]))
        })?;
        edges.push(e);
    }
    let n = edges.len();
    let m = Matching::new(g, edges)?;
    if m.len() != n {
        return Err(ModelError::InvalidMatching("pair listed twice".to_string()));
    }
    Ok(m)
}

/// One `ID ID` line per matched pair, in canonical edge order.
pub fn serialize_matching(inst: &Instance, m: &Matching) -> String {
    m.pairs(inst.graph())
        .into_iter()
        .map(|(a, b)| format!("{} {}\n", inst.name(a), inst.name(b)))
        .collect()
}
