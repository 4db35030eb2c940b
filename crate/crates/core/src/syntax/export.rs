//! Factorization documents and DOT export of the block order.

use std::fmt::Write;

use super::document::{element, lines, pairs, tokens};
use super::parser::{ParseError, Span};
use crate::factorization::{Factorization, TypedPartialOrder};
use crate::logic::OneType;

fn type_label(a: &TypedPartialOrder, t: &OneType) -> String {
    let names: Vec<&str> = a
        .signature()
        .unary()
        .iter()
        .zip(&t.unary)
        .filter(|(_, &v)| v)
        .map(|(n, _)| n.as_str())
        .collect();
    if names.is_empty() {
        "∅".into()
    } else {
        names.join(",")
    }
}

/// The block order as a DOT digraph: one node per block labelled with its
/// 1-type and size, edges along covering pairs, extremal blocks drawn with a
/// double border.
pub fn export_factorization_dot(a: &TypedPartialOrder, f: &Factorization) -> String {
    let mut out = String::from("digraph factorization {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..f.len() {
        let label = format!("{{{}}} ×{}", type_label(a, f.tp(a, i)), f.block(i).len());
        let extra = if f.is_extremal_block(a, i) { ", peripheries=2" } else { "" };
        writeln!(out, "  b{i} [label=\"{}\"{extra}];", label.replace('"', "\\\"")).unwrap();
    }
    for (i, j) in f.covers().pairs() {
        writeln!(out, "  b{i} -> b{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// `block:` lines listing members, then the block order as pairs of block indices.
pub fn write_factorization(f: &Factorization) -> String {
    let mut out = String::new();
    for b in f.blocks() {
        let members: Vec<String> = b.iter().map(usize::to_string).collect();
        writeln!(out, "block: {}", members.join(" ")).unwrap();
    }
    let order: Vec<String> = f.order().pairs().map(|(i, j)| format!("({i},{j})")).collect();
    writeln!(out, "order: {}", order.join(" ")).unwrap();
    out
}

/// Reads a factorization of `a` written by [`write_factorization`] and checks (F1)–(F3).
pub fn read_factorization(text: &str, a: &TypedPartialOrder) -> Result<Factorization, ParseError> {
    let mut blocks = Vec::new();
    let mut edges = Vec::new();
    let mut last = Span { start: 0, end: text.len() };
    for line in lines(text)? {
        last = Span { start: line.offset, end: line.value_offset + line.value.len() };
        match line.key {
            "block" => blocks.push(
                tokens(line.value, line.value_offset)
                    .into_iter()
                    .map(|(t, at)| element(text, t, at, a.size()))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            "order" => edges = pairs(text, &line, usize::MAX)?,
            other => {
                return Err(ParseError::at(
                    text,
                    Span { start: line.offset, end: line.offset + other.len() },
                    format!("unknown key `{other}`"),
                ))
            }
        }
    }
    if edges.iter().any(|&(i, j)| i >= blocks.len() || j >= blocks.len()) {
        return Err(ParseError::at(text, last, "the order mentions a block that does not exist"));
    }
    Factorization::new(a, blocks, edges).map_err(|e| ParseError::at(text, last, e.to_string()))
}
