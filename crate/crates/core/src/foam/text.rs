//! Text format for pre-foams.
//!
//! ```text
//! foam theta
//! facet a genus=0 dots=0 slots=1
//! facet b genus=0 dots=1 slots=1
//! facet c genus=0 dots=2 slots=1
//! singular s a:0 b:0 c:0
//! ```
//!
//! The three legs of a singular circle are listed in cyclic order; slots
//! are 0-based.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Facet, FoamError, PreFoam, SingularCircle};
use crate::web::text::lines;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FoamParseError {
    #[error("line {line}: {message} (at `{token}`)")]
    Syntax {
        line: usize,
        token: String,
        message: String,
    },
    #[error("foam `{name}` starting at line {line}: {source}")]
    Invalid {
        name: String,
        line: usize,
        #[source]
        source: FoamError,
    },
}

fn syntax(line: usize, token: &str, message: impl Into<String>) -> FoamParseError {
    FoamParseError::Syntax {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

fn field(line: usize, tok: &str, key: &str) -> Result<usize, FoamParseError> {
    tok.strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| syntax(line, tok, format!("expected {key}=<n>")))
}

struct Block<'a> {
    name: String,
    line: usize,
    foam: PreFoam,
    index: HashMap<&'a str, usize>,
}

/// Parses every `foam` block; each must be closed and well formed.
pub fn parse_foams(src: &str) -> Result<Vec<(String, PreFoam)>, FoamParseError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (line, toks) in lines(src) {
        let kw = toks[0];
        if kw == "foam" {
            if toks.len() != 2 {
                return Err(syntax(line, kw, "expected `foam <name>`"));
            }
            blocks.push(Block {
                name: toks[1].to_string(),
                line,
                foam: PreFoam::default(),
                index: HashMap::new(),
            });
            continue;
        }
        let b = blocks
            .last_mut()
            .ok_or_else(|| syntax(line, kw, "expected `foam <name>` first"))?;
        match kw {
            "facet" => {
                if toks.len() != 5 {
                    return Err(syntax(line, kw, "expected `facet <id> genus=<g> dots=<d> slots=<k>`"));
                }
                let facet = Facet {
                    name: toks[1].to_string(),
                    genus: field(line, toks[2], "genus")?,
                    dots: field(line, toks[3], "dots")?,
                    slots: field(line, toks[4], "slots")?,
                };
                if b.index.insert(toks[1], b.foam.facets.len()).is_some() {
                    return Err(syntax(line, toks[1], "duplicate facet id"));
                }
                b.foam.facets.push(facet);
            }
            "singular" => {
                if toks.len() != 5 {
                    return Err(syntax(line, kw, "expected `singular <id> <facet:slot> x3`"));
                }
                let mut legs = [(0, 0); 3];
                for (k, tok) in toks[2..].iter().enumerate() {
                    let (f, s) = tok
                        .split_once(':')
                        .ok_or_else(|| syntax(line, tok, "expected <facet>:<slot>"))?;
                    let f = *b.index.get(f).ok_or_else(|| syntax(line, tok, "unknown facet"))?;
                    let s = s.parse().map_err(|_| syntax(line, tok, "slot must be a number"))?;
                    legs[k] = (f, s);
                }
                b.foam.singular.push(SingularCircle {
                    name: toks[1].to_string(),
                    legs,
                });
            }
            other => return Err(syntax(line, other, "unknown keyword")),
        }
    }
    blocks
        .into_iter()
        .map(|b| {
            b.foam.check().map_err(|source| FoamParseError::Invalid {
                name: b.name.clone(),
                line: b.line,
                source,
            })?;
            Ok((b.name, b.foam))
        })
        .collect()
}

pub fn write_foam(name: &str, f: &PreFoam) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "foam {name}");
    for x in &f.facets {
        let _ = writeln!(out, "facet {} genus={} dots={} slots={}", x.name, x.genus, x.dots, x.slots);
    }
    for c in &f.singular {
        let legs: Vec<String> = c
            .legs
            .iter()
            .map(|&(i, s)| format!("{}:{s}", f.facets[i].name))
            .collect();
        let _ = writeln!(out, "singular {} {}", c.name, legs.join(" "));
    }
    out
}
