//! Finite satisfiability for two-variable first-order logic extended with a
//! distinguished partial order or a distinguished transitive relation.

pub mod cliques;
pub mod cuts;
pub mod factorization;
pub mod hat;
pub mod logic;
pub mod normal_forms;
pub mod relation;
pub mod resolution;
pub mod syntax;
pub mod solver;
