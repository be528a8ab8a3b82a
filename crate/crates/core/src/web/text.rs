//! Line-oriented text format for webs.
//!
//! ```text
//! web theta
//! boundary
//! vertex u source
//! vertex v sink
//! edge a u v
//! edge b u v
//! edge c u v
//! rot u a b c
//! rot v c b a
//! ```
//!
//! `boundary` lists signs left to right (nothing after it means closed);
//! edge endpoints are vertex ids or `b<k>` for boundary point `k` (0-based);
//! `rot` lists edges counterclockwise; `circle <id>` adds a vertexless loop.
//! `nest <member> in <edge> <0|1>` puts the closed component containing
//! vertex or circle `member` in the face left (0) or right (1) of the edge as
//! directed tail to head; `nest <member> in <circle> <0|1>` uses the inside
//! (0) or outside (1) of a circle; `nest <member> in outer` is the default.
//! `outer <edge> <0|1>` names the outer face of the closed component the edge
//! belongs to. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Endpoint, FaceSite, Member, Polarity, RawWeb, Web, WebError};
use crate::sign::SignSequence;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message} (at `{token}`)")]
    Syntax {
        line: usize,
        token: String,
        message: String,
    },
    #[error("web `{name}` starting at line {line}: {source}")]
    Invalid {
        name: String,
        line: usize,
        #[source]
        source: WebError,
    },
}

fn syntax(line: usize, token: &str, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

/// Tokenized, comment-free lines with their 1-based numbers.
pub(crate) fn lines(src: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    src.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

#[derive(Default)]
struct Block<'a> {
    name: String,
    line: usize,
    boundary: Option<SignSequence>,
    vertices: Vec<(&'a str, Polarity)>,
    edges: Vec<(usize, &'a str, &'a str, &'a str)>,
    rots: Vec<(usize, &'a str, Vec<&'a str>)>,
    circles: Vec<&'a str>,
    nests: Vec<(usize, &'a str, Vec<&'a str>)>,
    outers: Vec<(usize, &'a str, &'a str)>,
}

/// Parses every `web` block of a file.
pub fn parse_webs(src: &str) -> Result<Vec<(String, Web)>, ParseError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (line, toks) in lines(src) {
        let kw = toks[0];
        if kw == "web" {
            let name = toks.get(1).ok_or_else(|| syntax(line, kw, "missing web name"))?;
            if toks.len() > 2 {
                return Err(syntax(line, toks[2], "unexpected token"));
            }
            blocks.push(Block {
                name: name.to_string(),
                line,
                ..Block::default()
            });
            continue;
        }
        let block = blocks
            .last_mut()
            .ok_or_else(|| syntax(line, kw, "expected `web <name>` first"))?;
        let arity = |n: usize| -> Result<(), ParseError> {
            if toks.len() < n + 1 {
                Err(syntax(line, kw, format!("expected {n} arguments")))
            } else if toks.len() > n + 1 {
                Err(syntax(line, toks[n + 1], "unexpected token"))
            } else {
                Ok(())
            }
        };
        match kw {
            "boundary" => {
                if block.boundary.is_some() {
                    return Err(syntax(line, kw, "boundary given twice"));
                }
                let joined: String = toks[1..].concat();
                let seq = joined.parse::<SignSequence>().map_err(|e| {
                    syntax(line, &e.found.to_string(), "boundary signs must be + or -")
                })?;
                block.boundary = Some(seq);
            }
            "vertex" => {
                arity(2)?;
                let pol = match toks[2] {
                    "sink" => Polarity::Sink,
                    "source" => Polarity::Source,
                    t => return Err(syntax(line, t, "expected `sink` or `source`")),
                };
                if boundary_index(toks[1]).is_some() {
                    return Err(syntax(line, toks[1], "vertex ids of the form b<k> are reserved"));
                }
                block.vertices.push((toks[1], pol));
            }
            "edge" => {
                arity(3)?;
                block.edges.push((line, toks[1], toks[2], toks[3]));
            }
            "rot" => {
                if toks.len() < 2 {
                    return Err(syntax(line, kw, "expected a vertex id"));
                }
                block.rots.push((line, toks[1], toks[2..].to_vec()));
            }
            "circle" => {
                arity(1)?;
                block.circles.push(toks[1]);
            }
            "nest" => {
                if toks.len() < 4 || toks[2] != "in" {
                    return Err(syntax(line, kw, "expected `nest <member> in <face>`"));
                }
                block.nests.push((line, toks[1], toks[3..].to_vec()));
            }
            "outer" => {
                arity(2)?;
                block.outers.push((line, toks[1], toks[2]));
            }
            other => return Err(syntax(line, other, "unknown keyword")),
        }
    }
    blocks.into_iter().map(build).collect()
}

/// Parses a file that must contain exactly one web.
pub fn parse_web(src: &str) -> Result<(String, Web), ParseError> {
    let mut all = parse_webs(src)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        k => Err(syntax(1, "", format!("expected exactly one web, found {k}"))),
    }
}

fn boundary_index(tok: &str) -> Option<usize> {
    tok.strip_prefix('b')?.parse().ok()
}

fn side(line: usize, tok: &str) -> Result<bool, ParseError> {
    match tok {
        "0" => Ok(false),
        "1" => Ok(true),
        t => Err(syntax(line, t, "expected 0 or 1")),
    }
}

fn build(b: Block) -> Result<(String, Web), ParseError> {
    let mut ids: HashMap<&str, (&str, usize)> = HashMap::new();
    let decls = b
        .vertices
        .iter()
        .enumerate()
        .map(|(i, (v, _))| ("vertex", *v, i, b.line))
        .chain(b.edges.iter().enumerate().map(|(i, e)| ("edge", e.1, i, e.0)))
        .chain(b.circles.iter().enumerate().map(|(i, c)| ("circle", *c, i, b.line)));
    for (kind, tok, i, line) in decls {
        if ids.insert(tok, (kind, i)).is_some() {
            return Err(syntax(line, tok, "duplicate id"));
        }
    }
    let lookup = |line: usize, tok: &str, kind: &str| -> Result<usize, ParseError> {
        match ids.get(tok) {
            Some(&(k, i)) if k == kind => Ok(i),
            Some(&(k, _)) => Err(syntax(line, tok, format!("expected a {kind} id, found a {k} id"))),
            None => Err(syntax(line, tok, format!("unknown {kind}"))),
        }
    };

    let boundary = b.boundary.clone().unwrap_or_default();
    let mut raw = RawWeb {
        boundary,
        vertices: b.vertices.iter().map(|&(_, p)| p).collect(),
        rotations: vec![Vec::new(); b.vertices.len()],
        circles: b.circles.len(),
        ..RawWeb::default()
    };
    for &(line, _, tail, head) in &b.edges {
        let end = |tok: &str| match boundary_index(tok) {
            Some(k) => Ok(Endpoint::Boundary(k)),
            None => lookup(line, tok, "vertex").map(Endpoint::Vertex),
        };
        raw.edges.push((end(tail)?, end(head)?));
    }
    let mut rotated = vec![false; b.vertices.len()];
    for (line, v, es) in &b.rots {
        let v = lookup(*line, v, "vertex")?;
        if rotated[v] {
            return Err(syntax(*line, "rot", "rotation given twice for this vertex"));
        }
        rotated[v] = true;
        raw.rotations[v] = es
            .iter()
            .map(|e| lookup(*line, e, "edge"))
            .collect::<Result<_, _>>()?;
    }
    for (line, member, target) in &b.nests {
        let m = match ids.get(member) {
            Some(&("vertex", i)) => Member::Vertex(i),
            Some(&("circle", i)) => Member::Circle(i),
            _ => return Err(syntax(*line, member, "expected a vertex or circle id")),
        };
        let site = match target.as_slice() {
            ["outer"] => None,
            [t, s] => {
                let s = side(*line, s)?;
                match ids.get(t) {
                    Some(&("edge", e)) => Some(FaceSite::Left(2 * e + usize::from(s))),
                    Some(&("circle", c)) if s => Some(FaceSite::CircleOutside(c)),
                    Some(&("circle", c)) => Some(FaceSite::CircleInside(c)),
                    _ => return Err(syntax(*line, t, "expected an edge or circle id")),
                }
            }
            _ => return Err(syntax(*line, "nest", "expected `in outer` or `in <id> <0|1>`")),
        };
        raw.nests.push((m, site));
    }
    for &(line, e, s) in &b.outers {
        let e = lookup(line, e, "edge")?;
        let d = 2 * e + usize::from(side(line, s)?);
        let v = match raw.edges[e] {
            (Endpoint::Vertex(v), _) | (_, Endpoint::Vertex(v)) => v,
            _ => return Err(syntax(line, "outer", "edge has no vertex")),
        };
        raw.outers.push((v, FaceSite::Left(d)));
    }
    let web = raw.validate().map_err(|source| ParseError::Invalid {
        name: b.name.clone(),
        line: b.line,
        source,
    })?;
    Ok((b.name, web))
}

/// Renders a web in the text format; `parse_webs` reads it back to an
/// isomorphic web.
pub fn write_web(name: &str, w: &Web) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "web {name}");
    let signs: Vec<String> = w.boundary().signs().iter().map(|s| s.symbol().to_string()).collect();
    if signs.is_empty() {
        out.push_str("boundary\n");
    } else {
        let _ = writeln!(out, "boundary {}", signs.join(" "));
    }
    for v in 0..w.vertex_count() {
        let p = match w.polarity(v) {
            Polarity::Sink => "sink",
            Polarity::Source => "source",
        };
        let _ = writeln!(out, "vertex v{v} {p}");
    }
    let end = |e: Endpoint| match e {
        Endpoint::Vertex(v) => format!("v{v}"),
        Endpoint::Boundary(k) => format!("b{k}"),
    };
    for e in 0..w.edge_count() {
        let _ = writeln!(out, "edge e{e} {} {}", end(w.end(2 * e)), end(w.end(2 * e + 1)));
    }
    for v in 0..w.vertex_count() {
        let r = w.rotation(v);
        let _ = writeln!(out, "rot v{v} e{} e{} e{}", r[0] / 2, r[1] / 2, r[2] / 2);
    }
    for c in 0..w.circle_count() {
        let _ = writeln!(out, "circle c{c}");
    }
    let site = |s: FaceSite| match s {
        FaceSite::Left(d) => format!("e{} {}", d / 2, d % 2),
        FaceSite::CircleInside(c) => format!("c{c} 0"),
        FaceSite::CircleOutside(c) => format!("c{c} 1"),
    };
    for comp in w.closed_components() {
        let _ = writeln!(out, "outer e{} {}", comp.outer / 2, comp.outer % 2);
        if let Some(s) = comp.container {
            let _ = writeln!(out, "nest v{} in {}", comp.vertices[0], site(s));
        }
    }
    for c in 0..w.circle_count() {
        if let Some(s) = w.circle_container(c) {
            let _ = writeln!(out, "nest c{c} in {}", site(s));
        }
    }
    out
}
