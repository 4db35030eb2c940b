//! Cliques of the distinguished transitive relation: decomposition,
//! shrinking, and the reduction to a partial order over cliques.

mod cells;
mod cliquify;
mod decompose;
mod shrink;

pub use cells::{CellBudget, CellTable, Diatom};
pub use cliquify::{abstract_model, cliquify, expand_model, Cliquified};
pub use decompose::{cliques_of, order_atom, CliqueDecomposition, OrderAtom};
pub use shrink::{bound_cliques, check_shrink, shrink_clique, shrink_substructure, Shrunk};

use crate::logic::LogicError;
use crate::normal_forms::NfError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CliqueError {
    #[error("not a transitive structure: {0}")]
    NotTransitive(String),
    #[error("{0}")]
    BadInput(String),
    #[error("the structure is not a model of the formula")]
    NotAModel,
    #[error("the model is a single clique")]
    SingleClique,
    #[error("a clique of size {size} exceeds the bound {bound}")]
    CliqueTooLarge { size: usize, bound: usize },
    #[error("enumeration refused: {0}")]
    Budget(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error("property ({property}) fails: {detail}\n{bundle}")]
    Property { property: &'static str, detail: String, bundle: String },
    #[error("internal: {0}")]
    Internal(String),
}
