//! Bounded model search, decision procedures and pipeline cross-checks.

pub mod corpus;
mod decide;
mod ground;
mod pipeline;
mod random;
mod search;

pub use decide::{complete_bound_note, decide, single_clique_formula, DecideError, Decision, DecisionOutcome};
pub use pipeline::{pipeline_verify, BASIC_UNARY_LIMIT, PipelineError, Report, Stage, StageOutcome};
pub use random::{random_formula, random_structure, random_weak_nf, FormulaShape};
pub use search::{
    find_model, find_model_up_to, find_models, sat_at, BoundedOutcome, SearchBudget, SearchError, SizeOutcome,
};
