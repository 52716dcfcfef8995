//! The `.sqc` text format.
//!
//! ```text
//! # comment
//! vertex: u w            # optional; one vertex is implied when absent
//! hedges: a b            # or a:u>w when vertices are declared
//! vedges: x y
//! square: a x -b y       # bottom right top left
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{ComplexError, EdgeClass, EdgeLabel, OrientedEdge, Sign, Square, SquareComplexPresentation};

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with('-')
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

struct PendingEdge {
    line: usize,
    name: String,
    class: EdgeClass,
    ends: Option<(String, String)>,
}

pub fn parse_complex(text: &str) -> Result<SquareComplexPresentation, ComplexError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<PendingEdge> = Vec::new();
    let mut squares: Vec<(usize, [String; 4])> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(':').ok_or_else(|| ComplexError::Parse {
            line,
            reason: format!("expected `directive: ...`, got `{content}`"),
        })?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "vertex" | "vertices" => {
                for t in tokens {
                    if !valid_name(t) {
                        return Err(ComplexError::Parse { line, reason: format!("bad vertex name `{t}`") });
                    }
                    if vertices.iter().any(|v| v == t) {
                        return Err(ComplexError::DuplicateLabel { line, name: t.to_string() });
                    }
                    vertices.push(t.to_string());
                }
            }
            k @ ("hedges" | "vedges") => {
                let class = if k == "hedges" { EdgeClass::Horizontal } else { EdgeClass::Vertical };
                for t in tokens {
                    let (name, ends) = match t.split_once(':') {
                        Some((name, ends)) => {
                            let (a, b) = ends.split_once('>').ok_or_else(|| ComplexError::Parse {
                                line,
                                reason: format!("edge `{t}`: endpoints must read `tail>head`"),
                            })?;
                            (name, Some((a.to_string(), b.to_string())))
                        }
                        None => (t, None),
                    };
                    if !valid_name(name) {
                        return Err(ComplexError::Parse { line, reason: format!("bad edge name `{name}`") });
                    }
                    if edges.iter().any(|e| e.name == name) || vertices.iter().any(|v| v == name) {
                        return Err(ComplexError::DuplicateLabel { line, name: name.to_string() });
                    }
                    edges.push(PendingEdge { line, name: name.to_string(), class, ends });
                }
            }
            "square" => {
                let four: [&str; 4] = tokens.as_slice().try_into().map_err(|_| ComplexError::Parse {
                    line,
                    reason: format!("a square needs 4 sides, got {}", tokens.len()),
                })?;
                squares.push((line, four.map(str::to_string)));
            }
            other => {
                return Err(ComplexError::Parse { line, reason: format!("unknown directive `{other}`") });
            }
        }
    }

    let implicit_vertex = vertices.is_empty();
    if implicit_vertex {
        vertices.push("v".to_string());
    }
    let vindex: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();

    let mut hedges = Vec::new();
    let mut vedges = Vec::new();
    let mut lookup: HashMap<String, OrientedEdge> = HashMap::new();
    for e in &edges {
        let (tail, head) = match (&e.ends, implicit_vertex) {
            (None, true) => (0, 0),
            (Some((a, b)), false) => {
                let get = |n: &String| {
                    vindex.get(n.as_str()).copied().ok_or_else(|| ComplexError::Parse {
                        line: e.line,
                        reason: format!("unknown vertex `{n}`"),
                    })
                };
                (get(a)?, get(b)?)
            }
            (Some(_), true) => {
                return Err(ComplexError::Parse {
                    line: e.line,
                    reason: "edge endpoints given but no `vertex:` directive".to_string(),
                })
            }
            (None, false) => {
                return Err(ComplexError::Parse {
                    line: e.line,
                    reason: format!("edge `{}` needs endpoints `name:tail>head`", e.name),
                })
            }
        };
        let list = match e.class {
            EdgeClass::Horizontal => &mut hedges,
            EdgeClass::Vertical => &mut vedges,
        };
        lookup.insert(e.name.clone(), OrientedEdge::pos(e.class, list.len() as u32));
        list.push(EdgeLabel { name: e.name.clone(), class: e.class, tail, head });
    }

    let slots = [
        ("bottom", EdgeClass::Horizontal),
        ("right", EdgeClass::Vertical),
        ("top", EdgeClass::Horizontal),
        ("left", EdgeClass::Vertical),
    ];
    let mut parsed = Vec::with_capacity(squares.len());
    let mut lines = Vec::with_capacity(squares.len());
    for (line, toks) in &squares {
        let mut sides = [OrientedEdge::pos(EdgeClass::Horizontal, 0); 4];
        for (k, tok) in toks.iter().enumerate() {
            let (neg, name) = match tok.strip_prefix('-') {
                Some(n) => (true, n),
                None => (false, tok.as_str()),
            };
            let mut oe = *lookup.get(name).ok_or_else(|| ComplexError::Parse {
                line: *line,
                reason: format!("unknown label `{name}`"),
            })?;
            if neg {
                oe.sign = Sign::Neg;
            }
            let (slot, expected) = slots[k];
            if oe.class != expected {
                return Err(ComplexError::Class { line: *line, label: name.to_string(), slot, expected });
            }
            sides[k] = oe;
        }
        parsed.push(Square::new(sides[0], sides[1], sides[2], sides[3]));
        lines.push(*line);
    }

    SquareComplexPresentation::build(vertices, implicit_vertex, hedges, vedges, parsed, Some(&lines))
}

pub fn serialize_complex(p: &SquareComplexPresentation) -> String {
    let mut out = String::new();
    let explicit = !p.has_implicit_vertex();
    if explicit {
        let _ = writeln!(out, "vertex: {}", p.vertices().join(" "));
    }
    for (key, edges) in [("hedges", p.hedges()), ("vedges", p.vedges())] {
        let toks: Vec<String> = edges
            .iter()
            .map(|e| {
                if explicit {
                    format!("{}:{}>{}", e.name, p.vertices()[e.tail], p.vertices()[e.head])
                } else {
                    e.name.clone()
                }
            })
            .collect();
        if toks.is_empty() {
            let _ = writeln!(out, "{key}:");
        } else {
            let _ = writeln!(out, "{key}: {}", toks.join(" "));
        }
    }
    for s in p.squares() {
        let _ = writeln!(
            out,
            "square: {} {} {} {}",
            p.letter_name(s.bottom),
            p.letter_name(s.right),
            p.letter_name(s.top),
            p.letter_name(s.left)
        );
    }
    out
}
