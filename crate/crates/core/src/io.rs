//! Text and JSON forms of trees and codes.
//!
//! Tree text: a header line `n root`, then `n - 1` lines `child parent`.
//! Tree JSON: `{"n": .., "root": .., "parent": {"child": parent, ..}}`.
//! Code text: an optional header line `n variant`, then the symbols
//! separated by whitespace. Without a header `n` is the length plus one.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::{CodecError, SlitherCode};
use crate::tree::{ParseVariantError, RootedTree, TreeError, Variant};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Variant(#[from] ParseVariantError),
    #[error("code declares variant {declared} but {requested} was requested")]
    VariantConflict { declared: Variant, requested: Variant },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn parse_label(tok: &str, line: usize) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a label, got {tok:?}")))
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    root: usize,
    parent: BTreeMap<usize, usize>,
}

/// Parses either the text or the JSON tree form (JSON if the input starts
/// with `{`).
pub fn parse_tree(input: &str) -> Result<RootedTree, FormatError> {
    if input.trim_start().starts_with('{') {
        let raw: TreeJson = serde_json::from_str(input)?;
        let edges: Vec<(usize, usize)> = raw.parent.into_iter().collect();
        return Ok(RootedTree::new(raw.n, Some(raw.root), &edges)?);
    }
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header `n root`"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [n, root] = head.as_slice() else {
        return Err(syntax(hl, "header must be `n root`"));
    };
    let (n, root) = (parse_label(n, hl)?, parse_label(root, hl)?);
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [c, p] = toks.as_slice() else {
            return Err(syntax(ln, "expected `child parent`"));
        };
        edges.push((parse_label(c, ln)?, parse_label(p, ln)?));
    }
    if edges.len() + 1 != n {
        return Err(syntax(hl, format!("expected {} edge lines, got {}", n.saturating_sub(1), edges.len())));
    }
    Ok(RootedTree::new(n, Some(root), &edges)?)
}

pub fn tree_to_text(tree: &RootedTree) -> String {
    let mut s = format!("{} {}\n", tree.n(), tree.root());
    for (c, p) in tree.edges() {
        writeln!(s, "{c} {p}").unwrap();
    }
    s
}

pub fn tree_to_json(tree: &RootedTree) -> serde_json::Value {
    serde_json::to_value(TreeJson { n: tree.n(), root: tree.root(), parent: tree.edges().collect() })
        .expect("tree serializes")
}

/// Parses a code. A header `n variant` wins over `n`/`variant` arguments
/// but must agree with a requested variant; otherwise `n` defaults to the
/// symbol count plus one.
pub fn parse_code(input: &str, variant: Option<Variant>, n: Option<usize>) -> Result<SlitherCode, FormatError> {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let header = lines.first().and_then(|&(ln, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            [n, v] if v.chars().any(char::is_alphabetic) => Some((ln, *n, *v)),
            _ => None,
        }
    });
    let (declared_n, declared_v, body) = match header {
        Some((ln, nt, vt)) => (Some(parse_label(nt, ln)?), Some(vt.parse::<Variant>()?), &lines[1..]),
        None => (None, None, &lines[..]),
    };
    let mut symbols = Vec::new();
    for &(ln, line) in body {
        for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
            if !tok.is_empty() {
                symbols.push(parse_label(tok, ln)?);
            }
        }
    }
    let variant = match (declared_v, variant) {
        (Some(d), Some(r)) if d != r => return Err(FormatError::VariantConflict { declared: d, requested: r }),
        (Some(v), _) | (None, Some(v)) => v,
        (None, None) => return Err(syntax(1, "variant required: give a header `n variant` or --variant")),
    };
    let n = declared_n.or(n).unwrap_or(symbols.len() + 1);
    Ok(SlitherCode::new(n, variant, symbols)?)
}

/// Header line plus symbol line.
pub fn code_to_text(code: &SlitherCode) -> String {
    let body: Vec<String> = code.symbols().iter().map(usize::to_string).collect();
    format!("{} {}\n{}\n", code.n(), code.variant(), body.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_TREE: &str = "10 9\n1 2\n2 5\n3 5\n4 6\n5 9\n6 1\n7 3\n8 1\n10 4\n";

    #[test]
    fn tree_text_round_trip() {
        let t = parse_tree(PI_TREE).unwrap();
        assert_eq!(t.root(), 9);
        assert_eq!(tree_to_text(&t), PI_TREE);
        assert_eq!(parse_tree("1 1\n").unwrap(), RootedTree::singleton());
    }

    #[test]
    fn tree_json_round_trip() {
        let t = parse_tree(PI_TREE).unwrap();
        let j = tree_to_json(&t);
        assert_eq!(j["parent"]["10"], 4);
        assert_eq!(parse_tree(&j.to_string()).unwrap(), t);
    }

    #[test]
    fn tree_text_errors() {
        assert!(matches!(parse_tree(""), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_tree("3 1\n2 1\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_tree("3 1\n2 3\n3 2\n"), Err(FormatError::Tree(TreeError::Cycle(_)))));
        assert!(matches!(parse_tree("2 1\n2 x\n"), Err(FormatError::Syntax { line: 2, .. })));
    }

    #[test]
    fn code_forms() {
        let c = parse_code("3 1 4 1 5 9 2 6 5", Some(Variant::Normal), None).unwrap();
        assert_eq!(c.n(), 10);
        assert_eq!(code_to_text(&c), "10 normal\n3 1 4 1 5 9 2 6 5\n");
        assert_eq!(parse_code(&code_to_text(&c), None, None).unwrap(), c);
        assert_eq!(parse_code("1 normal\n", None, None).unwrap().n(), 1);
        assert_eq!(parse_code("1 1", Some(Variant::Comply), Some(3)).unwrap().n(), 3);
        assert!(matches!(
            parse_code("1 1", Some(Variant::Comply), Some(5)),
            Err(FormatError::Codec(CodecError::WrongLength { .. }))
        ));
        assert!(parse_code("1 1", None, None).is_err());
        assert!(matches!(
            parse_code("3 comply\n1 1", Some(Variant::Normal), None),
            Err(FormatError::VariantConflict { .. })
        ));
    }
}
