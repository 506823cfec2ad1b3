//! DGF text format for digraphs and bipartite multigraphs.
//!
//! A file is a header line (`digraph` or `bipartite`) followed by
//! directives, one per line. `#` starts a comment line and blank lines are
//! skipped. Digraphs use `v NAME` declarations and `a U V` arcs (arc
//! endpoints declare themselves); bipartite graphs use `l NAME` / `r NAME`
//! part declarations and `e U V [MU]` edges whose endpoints must already be
//! declared in the proper part. Serialization is canonical: declarations and
//! edges are emitted in sorted order, so parse-then-serialize is a fixpoint.

use std::collections::BTreeSet;

use crate::error::{Error, ParseErrorKind};
use crate::graph::{BipartiteMultigraph, Digraph};

/// A parsed DGF object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgfObject {
    Digraph(Digraph),
    Bipartite(BipartiteMultigraph),
}

/// Parses DGF text. With `dedup`, exactly repeated arc and edge lines are
/// ignored instead of rejected; conflicting multiplicities for the same edge
/// stay an error.
pub fn parse(text: &str, dedup: bool) -> Result<DgfObject, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(ParseErrorKind::Header, 0, "missing header"))?;
    match header {
        "digraph" => parse_digraph(lines, dedup),
        "bipartite" => parse_bipartite(lines, dedup),
        other => Err(Error::parse(
            ParseErrorKind::Header,
            header_no,
            format!("expected `digraph` or `bipartite`, found {other:?}"),
        )),
    }
}

fn parse_digraph<'a, I>(lines: I, dedup: bool) -> Result<DgfObject, Error>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut declared: BTreeSet<&str> = BTreeSet::new();
    let mut vertices: BTreeSet<&str> = BTreeSet::new();
    let mut arcs: BTreeSet<(&str, &str)> = BTreeSet::new();
    for (no, line) in lines {
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "v" => {
                if tok.len() != 2 {
                    return Err(Error::parse(ParseErrorKind::Token, no, "expected `v NAME`"));
                }
                if !declared.insert(tok[1]) {
                    return Err(Error::parse(
                        ParseErrorKind::Duplicate,
                        no,
                        format!("vertex {} declared twice", tok[1]),
                    ));
                }
                vertices.insert(tok[1]);
            }
            "a" => {
                if tok.len() != 3 {
                    return Err(Error::parse(ParseErrorKind::Token, no, "expected `a U V`"));
                }
                if tok[1] == tok[2] {
                    return Err(Error::parse(
                        ParseErrorKind::Loop,
                        no,
                        format!("arc from {} to itself", tok[1]),
                    ));
                }
                if !arcs.insert((tok[1], tok[2])) && !dedup {
                    return Err(Error::parse(
                        ParseErrorKind::Duplicate,
                        no,
                        format!("arc {} {} repeated", tok[1], tok[2]),
                    ));
                }
                vertices.insert(tok[1]);
                vertices.insert(tok[2]);
            }
            other => {
                return Err(Error::parse(
                    ParseErrorKind::Directive,
                    no,
                    format!("directive {other:?} is not valid in a digraph file"),
                ));
            }
        }
    }
    let d = Digraph::new(
        vertices.into_iter().map(String::from),
        arcs.into_iter()
            .map(|(u, v)| (u.to_string(), v.to_string())),
    )?;
    Ok(DgfObject::Digraph(d))
}

fn parse_bipartite<'a, I>(lines: I, dedup: bool) -> Result<DgfObject, Error>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut left: BTreeSet<&str> = BTreeSet::new();
    let mut right: BTreeSet<&str> = BTreeSet::new();
    let mut edges: Vec<(&str, &str, u32)> = Vec::new();
    let mut seen: BTreeSet<(&str, &str, u32)> = BTreeSet::new();
    let mut pairs: BTreeSet<(&str, &str)> = BTreeSet::new();
    for (no, line) in lines {
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "l" | "r" => {
                if tok.len() != 2 {
                    return Err(Error::parse(
                        ParseErrorKind::Token,
                        no,
                        format!("expected `{} NAME`", tok[0]),
                    ));
                }
                if left.contains(tok[1]) || right.contains(tok[1]) {
                    return Err(Error::parse(
                        ParseErrorKind::Duplicate,
                        no,
                        format!("vertex {} declared twice", tok[1]),
                    ));
                }
                if tok[0] == "l" {
                    left.insert(tok[1]);
                } else {
                    right.insert(tok[1]);
                }
            }
            "e" => {
                if tok.len() != 3 && tok.len() != 4 {
                    return Err(Error::parse(
                        ParseErrorKind::Token,
                        no,
                        "expected `e U V` or `e U V MU`",
                    ));
                }
                if !left.contains(tok[1]) {
                    return Err(Error::parse(
                        ParseErrorKind::Part,
                        no,
                        format!("{} is not a declared left vertex", tok[1]),
                    ));
                }
                if !right.contains(tok[2]) {
                    return Err(Error::parse(
                        ParseErrorKind::Part,
                        no,
                        format!("{} is not a declared right vertex", tok[2]),
                    ));
                }
                let mu: u32 = match tok.get(3) {
                    None => 1,
                    Some(s) => s.parse().ok().filter(|&m| m > 0).ok_or_else(|| {
                        Error::parse(
                            ParseErrorKind::Multiplicity,
                            no,
                            format!("multiplicity {s:?} is not a positive integer"),
                        )
                    })?,
                };
                if !pairs.insert((tok[1], tok[2])) {
                    if dedup && seen.contains(&(tok[1], tok[2], mu)) {
                        continue;
                    }
                    return Err(Error::parse(
                        ParseErrorKind::Duplicate,
                        no,
                        format!("edge {} {} repeated", tok[1], tok[2]),
                    ));
                }
                seen.insert((tok[1], tok[2], mu));
                edges.push((tok[1], tok[2], mu));
            }
            other => {
                return Err(Error::parse(
                    ParseErrorKind::Directive,
                    no,
                    format!("directive {other:?} is not valid in a bipartite file"),
                ));
            }
        }
    }
    let g = BipartiteMultigraph::new(
        left.into_iter().map(String::from),
        right.into_iter().map(String::from),
        edges
            .into_iter()
            .map(|(x, y, m)| (x.to_string(), y.to_string(), m)),
    )?;
    Ok(DgfObject::Bipartite(g))
}

/// Canonical DGF text for a digraph.
pub fn serialize_digraph(d: &Digraph) -> String {
    let mut out = String::from("digraph\n");
    for v in d.vertex_names() {
        out.push_str(&format!("v {v}\n"));
    }
    for (u, v) in d.arcs() {
        out.push_str(&format!("a {u} {v}\n"));
    }
    out
}

/// Canonical DGF text for a bipartite multigraph.
pub fn serialize_bipartite(g: &BipartiteMultigraph) -> String {
    let mut out = String::from("bipartite\n");
    for v in g.left_names() {
        out.push_str(&format!("l {v}\n"));
    }
    for v in g.right_names() {
        out.push_str(&format!("r {v}\n"));
    }
    for (x, y, m) in g.edges() {
        if m == 1 {
            out.push_str(&format!("e {x} {y}\n"));
        } else {
            out.push_str(&format!("e {x} {y} {m}\n"));
        }
    }
    out
}

/// Canonical DGF text for either object kind.
pub fn serialize(obj: &DgfObject) -> String {
    match obj {
        DgfObject::Digraph(d) => serialize_digraph(d),
        DgfObject::Bipartite(g) => serialize_bipartite(g),
    }
}
