//! Concrete syntax: the formula grammar, structure documents and graph export.

mod document;
mod export;
mod parser;

pub use document::{read_structure, write_structure};
pub use export::{export_factorization_dot, read_factorization, write_factorization};
pub use parser::{parse_formula, parse_formula_infer, print_formula, ParseError, Span};
