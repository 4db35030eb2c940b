//! Removing ordinary binary predicates from formulas with one partial order:
//! clause resolution, duplication of non-royal elements and spread normal form.

mod clauses;
mod duplicate;
mod spread;

pub use clauses::{
    atom_value, brute_force_completions, cnf, complete_type, complete_type_closed, cross_atoms, is_cross_atom,
    resolve_closure, resolve_closure_bounded, satisfies, semi_diagonal_satisfies, strip_binary, transpose, Clause,
    ClauseSet, Literal, QuantifierPresent,
};
pub use duplicate::{check_duplication, duplicate_nonroyal, kings_of, Duplication, DuplicationError};
pub use spread::{
    eliminate_binaries, eliminated_model, reconstruct_model, spread_witness_check, to_spread, CourtLabelling, Elimination, Spread,
    SpreadError, SpreadNf, CLAUSE_LIMIT,
};
