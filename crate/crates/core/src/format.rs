//! Plain-text structure files and Graphviz output.
//!
//! ```text
//! lattice pentagon
//! elements 0 a b c 1
//! covers 0<a a<c c<1 0<b b<1
//! ```
//!
//! `poset` replaces `lattice` for posets. Tokens are whitespace-separated and
//! `#` starts a comment. `elements` and `covers` lines may repeat.

use std::fmt::Write as _;

use crate::catalog::Structure;
use crate::error::{Error, Result};
use crate::order::{FiniteLattice, FinitePoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub structure: Structure,
}

impl Document {
    pub fn poset(&self) -> &FinitePoset {
        match &self.structure {
            Structure::Lattice(l) => l.poset(),
            Structure::Poset(p) => p,
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut header: Option<(bool, String, usize)> = None;
    let mut elements: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut cover_lines: Vec<usize> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = body.split_whitespace();
        let Some(kw) = toks.next() else { continue };
        match kw {
            "lattice" | "poset" => {
                if header.is_some() {
                    return Err(perr(line, "second header; one structure per file"));
                }
                let name = toks.next().ok_or_else(|| perr(line, "missing structure name"))?;
                if toks.next().is_some() {
                    return Err(perr(line, "trailing tokens after name"));
                }
                header = Some((kw == "lattice", name.to_string(), line));
            }
            "elements" | "covers" if header.is_none() => {
                return Err(perr(line, "expected `lattice NAME` or `poset NAME` first"));
            }
            "elements" => elements.extend(toks.map(str::to_string)),
            "covers" => {
                for t in toks {
                    let (a, b) = t
                        .split_once('<')
                        .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains('<'))
                        .ok_or_else(|| perr(line, format!("bad cover `{t}`, expected a<b")))?;
                    covers.push((a.to_string(), b.to_string()));
                    cover_lines.push(line);
                }
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }

    let (is_lattice, name, hline) = header.ok_or_else(|| perr(1, "empty input"))?;
    for (i, (a, b)) in covers.iter().enumerate() {
        for n in [a, b] {
            if !elements.contains(n) {
                return Err(perr(cover_lines[i], format!("unknown element `{n}`")));
            }
        }
    }
    let poset = FinitePoset::build(&elements, &covers).map_err(|e| perr(hline, e.to_string()))?;
    let structure = if is_lattice {
        Structure::Lattice(FiniteLattice::from_poset(poset).map_err(|e| perr(hline, e.to_string()))?)
    } else {
        Structure::Poset(poset)
    };
    Ok(Document { name, structure })
}

/// Writes the cover relation in element order, so output is canonical.
pub fn write_document(doc: &Document) -> String {
    let kw = match doc.structure {
        Structure::Lattice(_) => "lattice",
        Structure::Poset(_) => "poset",
    };
    let p = doc.poset();
    let mut s = format!("{kw} {}\nelements {}\n", doc.name, p.names().join(" "));
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.name(a), p.name(b)))
        .collect();
    if !covers.is_empty() {
        let _ = writeln!(s, "covers {}", covers.join(" "));
    }
    s
}

pub fn write_lattice(name: &str, l: &FiniteLattice) -> String {
    write_document(&Document {
        name: name.to_string(),
        structure: Structure::Lattice(l.clone()),
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram: cover edges point upward, elements of equal height share a rank.
pub fn to_dot(name: &str, p: &FinitePoset) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(name));
    s.push_str("  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
    for a in p.elements() {
        let _ = writeln!(s, "  {};", quote(p.name(a)));
    }
    let heights = p.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let row: Vec<String> = p
            .elements()
            .filter(|&a| heights[a] == h)
            .map(|a| quote(p.name(a)))
            .collect();
        if row.len() > 1 {
            let _ = writeln!(s, "  {{ rank=same; {}; }}", row.join("; "));
        }
    }
    for (a, b) in p.covers() {
        let _ = writeln!(s, "  {} -> {};", quote(p.name(a)), quote(p.name(b)));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const PENTAGON: &str = "lattice pentagon\nelements 0 a b c 1\ncovers 0<a a<c c<1 0<b b<1\n";

    #[test]
    fn parses_pentagon() {
        let d = parse_document(PENTAGON).unwrap();
        let Structure::Lattice(l) = &d.structure else {
            panic!("not a lattice")
        };
        let a = l.index_of("a").unwrap();
        let b = l.index_of("b").unwrap();
        assert_eq!(l.meet(a, b), l.bottom());
        assert_eq!(l.join(a, b), l.top());
    }

    #[test]
    fn comments_and_split_lines() {
        let src = "# header\nposet n  # trailing\nelements a b\nelements c d\ncovers a<c b<c\ncovers b<d\n";
        let d = parse_document(src).unwrap();
        assert_eq!(d.poset().len(), 4);
        assert!(matches!(d.structure, Structure::Poset(_)));
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            "",
            "elements a",
            "lattice x\nelements a b\ncovers a<c",
            "lattice x\nelements a b\ncovers ab",
            "lattice x\nfoo",
            "lattice x\nlattice y",
            "lattice n\nelements a b c d\ncovers a<c b<c b<d",
        ];
        for src in bad {
            assert!(matches!(parse_document(src), Err(Error::Parse { .. })), "{src:?}");
        }
    }

    #[test]
    fn error_line_numbers() {
        let err = parse_document("lattice x\nelements a b\n\ncovers a<q\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
    }

    #[test]
    fn catalog_round_trip() {
        for e in catalog::all_entries() {
            let d = Document {
                name: e.name.to_string(),
                structure: e.structure.clone(),
            };
            let text = write_document(&d);
            assert_eq!(parse_document(&text).unwrap(), d, "{}", e.name);
        }
    }

    #[test]
    fn dot_has_every_cover() {
        let d = parse_document(PENTAGON).unwrap();
        let dot = to_dot("pentagon", d.poset());
        assert!(dot.starts_with("digraph \"pentagon\" {"));
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches(" -> ").count(), 5);
        assert!(dot.contains("\"a\" -> \"c\";"));
    }
}
