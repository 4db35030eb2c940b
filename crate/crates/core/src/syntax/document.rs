//! Plain-text documents for structures.
//!
//! ```text
//! logic: l2-1po
//! size: 3
//! unary: p q
//! binary: r
//! p: 0 2
//! r: (0,1) (1,2)
//! <: (0,1)
//! ```
//!
//! Predicates without a line are empty. The distinguished relation is keyed
//! `<` for the partial-order logics and `t` for the transitive one.

use std::fmt::Write;

use super::parser::{ParseError, Span};
use crate::logic::{Distinguished, Logic, Signature, Structure};

pub(super) struct Line<'a> {
    pub(super) key: &'a str,
    pub(super) value: &'a str,
    pub(super) offset: usize,
    pub(super) value_offset: usize,
}

pub(super) fn lines(text: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let body = raw.split('#').next().unwrap();
        let trimmed = body.trim();
        if !trimmed.is_empty() {
            let lead = body.len() - body.trim_start().len();
            let Some(colon) = body.find(':') else {
                return Err(ParseError::at(
                    text,
                    Span { start: offset + lead, end: offset + body.trim_end().len() },
                    "expected `key: value`",
                ));
            };
            let value = &body[colon + 1..];
            let vlead = value.len() - value.trim_start().len();
            out.push(Line {
                key: body[..colon].trim(),
                value: value.trim(),
                offset: offset + lead,
                value_offset: offset + colon + 1 + vlead,
            });
        }
        offset += raw.len();
    }
    Ok(out)
}

pub(super) fn element(text: &str, tok: &str, at: usize, size: usize) -> Result<usize, ParseError> {
    let span = Span { start: at, end: at + tok.len() };
    let v: usize = tok
        .parse()
        .map_err(|_| ParseError::at(text, span, format!("`{tok}` is not an element index")))?;
    if v >= size {
        return Err(ParseError::at(text, span, format!("element {v} is outside the domain of size {size}")));
    }
    Ok(v)
}

/// Splits `value` into whitespace-separated tokens with their absolute offsets.
pub(super) fn tokens(value: &str, base: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in value.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((&value[s..i], base + s));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((&value[s..], base + s));
    }
    out
}

pub(super) fn pairs(text: &str, line: &Line<'_>, size: usize) -> Result<Vec<(usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let squashed: String = line.value.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || {
        ParseError::at(
            text,
            Span { start: line.value_offset, end: line.value_offset + line.value.len() },
            "expected pairs written as `(a,b)`",
        )
    };
    let mut rest = squashed.as_str();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = inner.find(')').ok_or_else(bad)?;
        let (a, b) = inner[..close].split_once(',').ok_or_else(bad)?;
        let a = element(text, a, line.value_offset, size)?;
        let b = element(text, b, line.value_offset, size)?;
        out.push((a, b));
        rest = &inner[close + 1..];
    }
    Ok(out)
}

/// Reads a structure document and checks the distinguished relation.
pub fn read_structure(text: &str) -> Result<Structure, ParseError> {
    let ls = lines(text)?;
    let header = |key: &str| ls.iter().find(|l| l.key == key);
    let whole = |l: &Line<'_>| Span { start: l.offset, end: l.value_offset + l.value.len() };
    let missing = |key: &str| ParseError::at(text, Span { start: 0, end: 0 }, format!("missing `{key}` line"));

    let logic_line = header("logic").ok_or_else(|| missing("logic"))?;
    let logic = Logic::from_tag(logic_line.value)
        .ok_or_else(|| ParseError::at(text, whole(logic_line), format!("unknown logic `{}`", logic_line.value)))?;
    let size_line = header("size").ok_or_else(|| missing("size"))?;
    let size: usize = size_line
        .value
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| ParseError::at(text, whole(size_line), "size must be a positive integer"))?;
    let names = |key: &str| header(key).map(|l| tokens(l.value, l.value_offset)).unwrap_or_default();
    let mut sig = Signature::empty(logic.distinguished());
    for (name, at) in names("unary") {
        sig.add_unary(name)
            .map_err(|e| ParseError::at(text, Span { start: at, end: at + name.len() }, e.to_string()))?;
    }
    for (name, at) in names("binary") {
        sig.add_binary(name)
            .map_err(|e| ParseError::at(text, Span { start: at, end: at + name.len() }, e.to_string()))?;
    }
    if !logic.admits(&sig) {
        return Err(ParseError::at(text, whole(logic_line), "binary predicates are not allowed in this logic"));
    }
    let dist_key = match sig.distinguished() {
        Distinguished::None => None,
        Distinguished::PartialOrder => Some("<"),
        Distinguished::Transitive => Some("t"),
    };
    let mut s = Structure::new(sig.clone(), size);
    let mut seen = std::collections::HashSet::new();
    for l in &ls {
        if matches!(l.key, "logic" | "size" | "unary" | "binary") {
            if !seen.insert(l.key) {
                return Err(ParseError::at(text, whole(l), format!("`{}` given twice", l.key)));
            }
            continue;
        }
        if !seen.insert(l.key) {
            return Err(ParseError::at(text, whole(l), format!("`{}` given twice", l.key)));
        }
        if Some(l.key) == dist_key {
            for (a, b) in pairs(text, l, size)? {
                s.set_dist(a, b, true);
            }
        } else if let Some(p) = sig.unary_index(l.key) {
            for (tok, at) in tokens(l.value, l.value_offset) {
                let a = element(text, tok, at, size)?;
                s.set_unary(p, a, true);
            }
        } else if let Some(r) = sig.binary_index(l.key) {
            for (a, b) in pairs(text, l, size)? {
                s.set_binary(r, a, b, true);
            }
        } else {
            return Err(ParseError::at(
                text,
                Span { start: l.offset, end: l.offset + l.key.len() },
                format!("`{}` is not declared", l.key),
            ));
        }
    }
    if let Some(v) = s.check_distinguished().first() {
        let l = ls.iter().find(|l| Some(l.key) == dist_key);
        let span = l.map(|l| whole(l)).unwrap_or(Span { start: 0, end: 0 });
        return Err(ParseError::at(text, span, format!("distinguished relation is invalid: {v}")));
    }
    Ok(s)
}

/// Deterministic document for a structure; [`read_structure`] inverts it.
pub fn write_structure(s: &Structure) -> String {
    let sig = s.signature();
    let logic = match sig.distinguished() {
        Distinguished::None => Logic::L2,
        Distinguished::PartialOrder if sig.binary().is_empty() => Logic::L2PoUnary,
        Distinguished::PartialOrder => Logic::L2Po,
        Distinguished::Transitive => Logic::L2Trans,
    };
    let n = s.size();
    let mut out = String::new();
    let _ = writeln!(out, "logic: {logic}");
    let _ = writeln!(out, "size: {n}");
    let _ = writeln!(out, "unary:{}", sig.unary().iter().map(|p| format!(" {p}")).collect::<String>());
    let _ = writeln!(out, "binary:{}", sig.binary().iter().map(|r| format!(" {r}")).collect::<String>());
    for (p, name) in sig.unary().iter().enumerate() {
        let elems: String = (0..n).filter(|&a| s.unary(p, a)).map(|a| format!(" {a}")).collect();
        let _ = writeln!(out, "{name}:{elems}");
    }
    let pair_list = |f: &dyn Fn(usize, usize) -> bool| -> String {
        let mut v = String::new();
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    let _ = write!(v, " ({a},{b})");
                }
            }
        }
        v
    };
    for (r, name) in sig.binary().iter().enumerate() {
        let _ = writeln!(out, "{name}:{}", pair_list(&|a, b| s.binary(r, a, b)));
    }
    match sig.distinguished() {
        Distinguished::None => {}
        Distinguished::PartialOrder => {
            let _ = writeln!(out, "<:{}", pair_list(&|a, b| s.dist(a, b)));
        }
        Distinguished::Transitive => {
            let _ = writeln!(out, "t:{}", pair_list(&|a, b| s.dist(a, b)));
        }
    }
    out
}
