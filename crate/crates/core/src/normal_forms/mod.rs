//! Normal forms: standard and weak (Scott-style), basic formulas for a partial
//! order over unary predicates, and the transitive normal form.

mod basic;
mod standard;
mod transitive;

pub use basic::{expand_to_basic, to_basic, Basic, BasicSet, DirectionPredicates};
pub use standard::{to_standard_nf, to_weak_nf, weak_to_standard, StandardNf, WeakNf};
pub use transitive::{expand_to_transitive, to_transitive_nf, TransRel, TransitiveNf, Witness};

use crate::logic::LogicError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NfError {
    #[error("{0} is not a sentence")]
    NotASentence(String),
    #[error("malformed normal form: {0}")]
    Shape(String),
    #[error("outside the supported fragment: {0}")]
    Fragment(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}
