use std::sync::OnceLock;

use regex::Regex;

use super::{Graph, GraphDocument};
use crate::error::{Error, Result};

fn pair_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)").expect("valid regex"))
}

fn name_prefix_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\s*[A-Za-z_][A-Za-z0-9_]*\s*=").expect("valid regex"))
}

/// Parses any of the accepted graph documents, inferring `n` from the
/// largest label when the document does not state it.
///
/// Accepted forms:
/// * JSON: `{"n": 3, "edges": [[1, 2], [2, 3]]}`
/// * edge list: a `n <count>` line followed by `i j` lines (`#` comments allowed)
/// * listing: `[(1, 2), (2, 3)]`, optionally prefixed by `Name =` and spread
///   over several lines
pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_graph_sized(text, None)
}

/// Like [`parse_graph`], with an explicit vertex count that overrides the
/// inferred one (an explicit `n` header must agree with it).
pub fn parse_graph_sized(text: &str, n: Option<usize>) -> Result<Graph> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return parse_json(text, n);
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('n') && !l.contains('(') && !l.contains('=') => {
            parse_edge_list(text, n)
        }
        Some(_) => parse_listing(text, n),
        None => Err(Error::parse(1, "empty graph document")),
    }
}

fn parse_json(text: &str, n: Option<usize>) -> Result<Graph> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    if let Some(n) = n {
        if n != doc.n {
            return Err(Error::parse(
                1,
                format!("document declares n = {}, caller expects {n}", doc.n),
            ));
        }
    }
    let pairs: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        check_pair(a as i64, b as i64, Some(doc.n), 1).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(1, format!("edge #{}: {message}", k + 1)),
            other => other,
        })?;
    }
    build(doc.n, &pairs, &vec![1; pairs.len()])
}

fn parse_edge_list(text: &str, n: Option<usize>) -> Result<Graph> {
    let mut declared = None;
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if declared.is_none() {
            if fields.len() != 2 || fields[0] != "n" {
                return Err(Error::parse(
                    line_no,
                    format!("expected `n <count>`, found `{line}`"),
                ));
            }
            let count: usize = fields[1]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad vertex count `{}`", fields[1])))?;
            declared = Some(count);
            continue;
        }
        if fields.len() != 2 {
            return Err(Error::parse(line_no, format!("malformed pair `{line}`")));
        }
        let a: i64 = fields[0]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("malformed pair `{line}`")))?;
        let b: i64 = fields[1]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("malformed pair `{line}`")))?;
        check_pair(a, b, declared, line_no)?;
        pairs.push((a as usize, b as usize));
        lines.push(line_no);
    }
    let declared = declared.ok_or_else(|| Error::parse(1, "missing `n <count>` header"))?;
    if let Some(n) = n {
        if n != declared {
            return Err(Error::parse(
                1,
                format!("document declares n = {declared}, caller expects {n}"),
            ));
        }
    }
    build(declared, &pairs, &lines)
}

fn parse_listing(text: &str, n: Option<usize>) -> Result<Graph> {
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut line = raw.split('#').next().unwrap_or("");
        if let Some(m) = name_prefix_regex().find(line) {
            line = &line[m.end()..];
        }
        for cap in pair_regex().captures_iter(line) {
            let a: i64 = cap[1]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("malformed pair `{}`", &cap[0])))?;
            let b: i64 = cap[2]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("malformed pair `{}`", &cap[0])))?;
            check_pair(a, b, n, line_no)?;
            pairs.push((a as usize, b as usize));
            lines.push(line_no);
        }
        let rest = pair_regex().replace_all(line, "");
        if let Some(bad) = rest
            .chars()
            .find(|c| !(c.is_whitespace() || matches!(c, ',' | '[' | ']' | '&' | '\\')))
        {
            return Err(Error::parse(
                line_no,
                format!("malformed pair near `{bad}`"),
            ));
        }
    }
    if pairs.is_empty() {
        return Err(Error::parse(1, "no edges found"));
    }
    let inferred = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
    build(n.unwrap_or(inferred), &pairs, &lines)
}

fn check_pair(a: i64, b: i64, n: Option<usize>, line: usize) -> Result<()> {
    let limit = n.map(|n| n as i64).unwrap_or(i64::MAX);
    for v in [a, b] {
        if v < 1 || v > limit {
            return Err(Error::parse(line, format!("vertex label {v} out of range")));
        }
    }
    if a == b {
        return Err(Error::parse(line, format!("self-loop ({a}, {b})")));
    }
    Ok(())
}

fn build(n: usize, pairs: &[(usize, usize)], lines: &[usize]) -> Result<Graph> {
    let mut seen = std::collections::HashMap::new();
    for (&(a, b), &line) in pairs.iter().zip(lines) {
        if a > n || b > n {
            return Err(Error::parse(
                line,
                format!("vertex label {} out of range", a.max(b)),
            ));
        }
        if let Some(prev) = seen.insert((a.min(b), a.max(b)), line) {
            return Err(Error::parse(
                line,
                format!("duplicate edge ({a}, {b}), first seen on line {prev}"),
            ));
        }
    }
    Graph::from_one_based(n, pairs)
}
