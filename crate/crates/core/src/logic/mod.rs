//! Signatures, formulas, finite structures, types and the model-checking evaluator.

mod eval;
mod formula;
mod signature;
mod structure;
mod types;

pub use eval::{evaluate, holds, Assignment, Evaluator};
pub use formula::{bits_for, label_binary, label_unary, nnf, Formula, Var, Vocabulary};
pub use signature::{is_identifier, Distinguished, Signature, RESERVED};
pub use structure::{Structure, Violation};
pub use types::{enumerate_one_types, enumerate_two_types, Link, OneType, OrderRel, TwoType};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{name}` used with arity {used} but declared with arity {declared}")]
    ArityMismatch {
        name: String,
        used: usize,
        declared: usize,
    },
    #[error("variable {} is unassigned", .0.name())]
    Unassigned(Var),
    #[error("the signature has no distinguished `{0}`")]
    MissingDistinguished(&'static str),
    #[error("invalid predicate name `{0}`")]
    InvalidName(String),
    #[error("predicate name `{0}` is declared twice")]
    DuplicateName(String),
    #[error("element {0} is outside the domain")]
    ElementOutOfRange(usize),
    #[error("signatures do not match")]
    SignatureMismatch,
}

/// The four logics handled by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    /// Plain two-variable logic.
    L2,
    /// One distinguished partial order, unary predicates only otherwise.
    L2PoUnary,
    /// One distinguished partial order.
    L2Po,
    /// One distinguished transitive relation.
    L2Trans,
}

impl Logic {
    pub const ALL: [Logic; 4] = [Logic::L2, Logic::L2PoUnary, Logic::L2Po, Logic::L2Trans];

    pub fn tag(self) -> &'static str {
        match self {
            Logic::L2 => "l2",
            Logic::L2PoUnary => "l2-1po-u",
            Logic::L2Po => "l2-1po",
            Logic::L2Trans => "l2-1t",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Logic> {
        Logic::ALL.into_iter().find(|l| l.tag() == tag)
    }

    pub fn distinguished(self) -> Distinguished {
        match self {
            Logic::L2 => Distinguished::None,
            Logic::L2PoUnary | Logic::L2Po => Distinguished::PartialOrder,
            Logic::L2Trans => Distinguished::Transitive,
        }
    }

    /// Whether formulas over `sig` belong to this logic.
    pub fn admits(self, sig: &Signature) -> bool {
        sig.distinguished() == self.distinguished() && (self != Logic::L2PoUnary || sig.binary().is_empty())
    }
}

impl std::fmt::Display for Logic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}
