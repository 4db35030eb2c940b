//! Bounded model search.

use std::time::{Duration, Instant};

use super::ground::Grounding;
use crate::logic::{holds, Formula, LogicError, Signature, Structure};

/// Limits for a bounded search.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Largest domain size tried by [`find_model_up_to`].
    pub max_size: usize,
    /// Largest CNF (in clauses) built for a single domain size.
    pub max_clauses: usize,
    /// Wall-clock limit, checked between solver calls.
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_size: 6,
            max_clauses: 4_000_000,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn with_max_size(max_size: usize) -> Self {
        SearchBudget {
            max_size,
            ..SearchBudget::default()
        }
    }
}

/// Result of searching a single domain size.
#[derive(Clone, Debug)]
pub enum SizeOutcome {
    Sat(Structure),
    Unsat,
    Unknown(String),
}

/// Result of searching all sizes from 2 up to a bound.
#[derive(Clone, Debug)]
pub enum BoundedOutcome {
    Sat(Structure),
    NoModelUpTo(usize),
    Unknown(String),
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("{0} is not a sentence")]
    NotASentence(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("internal: the solver returned a structure that {0}")]
    BadModel(String),
}

fn prepare<'s>(f: &Formula, sig: &Signature, n: usize, budget: &SearchBudget) -> Result<Option<Grounding<'s>>, SearchError> {
    if !f.is_sentence() {
        return Err(SearchError::NotASentence(f.to_string()));
    }
    let mut g = Grounding::new(sig, n, budget.max_clauses);
    match g.assert_sentence(f)? {
        Ok(()) => {}
        Err(_) => return Ok(None),
    }
    if g.assert_distinguished().is_err() {
        return Ok(None);
    }
    Ok(Some(g))
}

fn check(f: &Formula, s: &Structure) -> Result<(), SearchError> {
    if let Some(v) = s.check_distinguished().first() {
        return Err(SearchError::BadModel(format!("violates the distinguished relation: {v}")));
    }
    if !holds(s, f)? {
        return Err(SearchError::BadModel("does not satisfy the formula".into()));
    }
    Ok(())
}

/// Searches for a model of `f` over `sig` with exactly `n` elements.
///
/// Every structure returned is re-checked with the evaluator.
pub fn find_model(f: &Formula, sig: &Signature, n: usize, budget: &SearchBudget) -> Result<SizeOutcome, SearchError> {
    let Some(mut g) = prepare(f, sig, n, budget)? else {
        return Ok(SizeOutcome::Unknown(format!(
            "grounding at size {n} exceeds {} clauses",
            budget.max_clauses
        )));
    };
    if g.assert_sorted_types().is_err() {
        return Ok(SizeOutcome::Unknown(format!("grounding at size {n} exceeds the clause budget")));
    }
    match g.solve() {
        Some(s) => {
            check(f, &s)?;
            Ok(SizeOutcome::Sat(s))
        }
        None => Ok(SizeOutcome::Unsat),
    }
}

/// Tries sizes `2..=budget.max_size` in increasing order.
pub fn find_model_up_to(f: &Formula, sig: &Signature, budget: &SearchBudget) -> Result<BoundedOutcome, SearchError> {
    let start = Instant::now();
    for n in 2..=budget.max_size {
        if let Some(limit) = budget.time_limit {
            if start.elapsed() > limit {
                return Ok(BoundedOutcome::Unknown(format!(
                    "time limit reached before size {n}; no model up to size {}",
                    n - 1
                )));
            }
        }
        match find_model(f, sig, n, budget)? {
            SizeOutcome::Sat(s) => return Ok(BoundedOutcome::Sat(s)),
            SizeOutcome::Unsat => {}
            SizeOutcome::Unknown(why) => {
                return Ok(BoundedOutcome::Unknown(format!("{why}; no model up to size {}", n - 1)))
            }
        }
    }
    Ok(BoundedOutcome::NoModelUpTo(budget.max_size))
}

/// Up to `limit` distinct models of size `n`, without symmetry breaking.
pub fn find_models(
    f: &Formula,
    sig: &Signature,
    n: usize,
    limit: usize,
    budget: &SearchBudget,
) -> Result<Option<Vec<Structure>>, SearchError> {
    let Some(mut g) = prepare(f, sig, n, budget)? else {
        return Ok(None);
    };
    let mut out = Vec::new();
    while out.len() < limit {
        match g.solve() {
            Some(s) => {
                check(f, &s)?;
                if g.block(&s).is_err() {
                    return Ok(None);
                }
                out.push(s);
            }
            None => break,
        }
    }
    Ok(Some(out))
}

/// Whether some model of size exactly `n` exists; `None` if the budget ran out.
pub fn sat_at(f: &Formula, sig: &Signature, n: usize, budget: &SearchBudget) -> Result<Option<bool>, SearchError> {
    Ok(match find_model(f, sig, n, budget)? {
        SizeOutcome::Sat(_) => Some(true),
        SizeOutcome::Unsat => Some(false),
        SizeOutcome::Unknown(_) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Distinguished, Var};
    use crate::syntax::parse_formula_infer;

    fn parse(src: &str, d: Distinguished) -> (Formula, Signature) {
        parse_formula_infer(src, d).unwrap()
    }

    #[test]
    fn infinity_axiom_has_no_small_model() {
        let (f, sig) = parse("forall x !t(x, x) & forall x exists y t(x, y)", Distinguished::Transitive);
        match find_model_up_to(&f, &sig, &SearchBudget::with_max_size(5)).unwrap() {
            BoundedOutcome::NoModelUpTo(5) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finds_chain() {
        let (f, sig) = parse("exists x exists y x < y & forall x (p(x) <-> !exists y y < x)", Distinguished::PartialOrder);
        match find_model(&f, &sig, 3, &SearchBudget::default()).unwrap() {
            SizeOutcome::Sat(s) => assert!(holds(&s, &f).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn enumeration_counts_labelled_models() {
        // exactly one p-element among 3: three labelled models
        let (f, sig) = parse(
            "exists x p(x) & forall x forall y (p(x) & p(y) -> x = y)",
            Distinguished::None,
        );
        let ms = find_models(&f, &sig, 3, 100, &SearchBudget::default()).unwrap().unwrap();
        assert_eq!(ms.len(), 3);
        let _ = Var::X;
    }

    #[test]
    fn clause_budget_gives_unknown() {
        let (f, sig) = parse("forall x forall y (r(x, y) | r(y, x))", Distinguished::None);
        let tight = SearchBudget { max_clauses: 3, ..SearchBudget::default() };
        assert!(matches!(find_model(&f, &sig, 4, &tight).unwrap(), SizeOutcome::Unknown(_)));
    }
}
