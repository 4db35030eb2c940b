//! The end-to-end bounded decision procedure.

use std::time::Instant;

use super::search::{find_model, SearchBudget, SearchError, SizeOutcome};
use crate::logic::{holds, Distinguished, Formula, Logic, Signature, Structure};
use crate::normal_forms::{to_standard_nf, NfError};

/// The verdict of a bounded run. `NoModelUpTo(k)` says nothing about sizes
/// beyond `k`.
#[derive(Clone, Debug)]
pub enum DecisionOutcome {
    Sat(Structure),
    NoModelUpTo(usize),
    Unknown(String),
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub outcome: DecisionOutcome,
    /// What was tried, in order.
    pub trace: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum DecideError {
    #[error("the formula's signature does not belong to {0}")]
    WrongLogic(Logic),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Nf(#[from] NfError),
}

/// The domain size beyond which a complete run would have to search.
pub fn complete_bound_note(logic: Logic) -> &'static str {
    match logic {
        Logic::L2 => "a complete run needs sizes up to 2^O(|φ|)",
        Logic::L2PoUnary => "a complete run needs sizes up to 2^2^O(|φ|)",
        Logic::L2Po => "a complete run needs sizes up to 2^2^2^O(|φ|)",
        Logic::L2Trans => "a complete run needs sizes up to 2^2^2^O(|φ|)",
    }
}

/// `φ` with every `t`-atom replaced by `⊤`, over the signature without `t`.
pub fn single_clique_formula(phi: &Formula) -> Formula {
    phi.map_atoms(&mut |a| match a {
        Formula::Trans(..) => Formula::True,
        a => a.clone(),
    })
}

/// Bounded satisfiability of `φ` in the given logic.
///
/// Sizes are tried in increasing order. For a transitive `t` each size is
/// first tried with `t` total (a single clique, which reduces to plain
/// two-variable logic) and then in general. For a partial order the search
/// runs on the standard normal form and the model is cut back to `σ`.
pub fn decide(phi: &Formula, sig: &Signature, logic: Logic, budget: &SearchBudget) -> Result<Decision, DecideError> {
    if !logic.admits(sig) {
        return Err(DecideError::WrongLogic(logic));
    }
    let mut trace = Vec::new();
    let start = Instant::now();
    let std = match logic {
        Logic::L2Po | Logic::L2PoUnary => {
            let (nf, star) = to_standard_nf(phi, sig)?;
            trace.push(format!("searching the standard normal form over {} predicates", star.len()));
            Some((nf.to_formula(), star))
        }
        _ => None,
    };
    let plain_sig = sig.with_distinguished(Distinguished::None);
    let single = single_clique_formula(phi);
    let finish = |outcome: SizeOutcome, n: usize, trace: &mut Vec<String>| -> Result<Option<DecisionOutcome>, DecideError> {
        Ok(match outcome {
            SizeOutcome::Sat(s) => Some(DecisionOutcome::Sat(s)),
            SizeOutcome::Unsat => None,
            SizeOutcome::Unknown(why) => {
                trace.push(format!("size {n}: {why}"));
                Some(DecisionOutcome::Unknown(format!("{why}; no model up to size {}", n - 1)))
            }
        })
    };
    for n in 2..=budget.max_size {
        if let Some(limit) = budget.time_limit {
            if start.elapsed() > limit {
                let why = format!("time limit reached before size {n}; no model up to size {}", n - 1);
                trace.push(why.clone());
                return Ok(Decision { outcome: DecisionOutcome::Unknown(why), trace });
            }
        }
        if logic == Logic::L2Trans {
            if let SizeOutcome::Sat(b) = find_model(&single, &plain_sig, n, budget)? {
                let mut s = b.with_signature_unchecked(sig.clone());
                for x in 0..n {
                    for y in 0..n {
                        s.set_dist(x, y, true);
                    }
                }
                trace.push(format!("size {n}: single clique"));
                return verified(phi, s, trace);
            }
        }
        let found = match &std {
            Some((f, star)) => match find_model(f, star, n, budget)? {
                SizeOutcome::Sat(s) => SizeOutcome::Sat(s.reduct(sig).map_err(SearchError::from)?),
                other => other,
            },
            None => find_model(phi, sig, n, budget)?,
        };
        if let Some(out) = finish(found, n, &mut trace)? {
            return match out {
                DecisionOutcome::Sat(s) => {
                    trace.push(format!("size {n}: model found"));
                    verified(phi, s, trace)
                }
                other => Ok(Decision { outcome: other, trace }),
            };
        }
        trace.push(format!("size {n}: no model"));
    }
    Ok(Decision { outcome: DecisionOutcome::NoModelUpTo(budget.max_size), trace })
}

fn verified(phi: &Formula, s: Structure, trace: Vec<String>) -> Result<Decision, DecideError> {
    if let Some(v) = s.check_distinguished().first() {
        return Err(SearchError::BadModel(format!("violates the distinguished relation: {v}")).into());
    }
    if !holds(&s, phi).map_err(SearchError::from)? {
        return Err(SearchError::BadModel("does not satisfy the formula".into()).into());
    }
    Ok(Decision { outcome: DecisionOutcome::Sat(s), trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula_infer;

    fn run(src: &str, logic: Logic, bound: usize) -> Decision {
        let (phi, sig) = parse_formula_infer(src, logic.distinguished()).unwrap();
        decide(&phi, &sig, logic, &SearchBudget::with_max_size(bound)).unwrap()
    }

    #[test]
    fn total_relation_is_one_clique() {
        let d = run("forall x forall y t(x, y)", Logic::L2Trans, 3);
        let DecisionOutcome::Sat(s) = d.outcome else { panic!() };
        assert_eq!(s.size(), 2);
        assert!(d.trace.last().unwrap().contains("single clique"));
    }

    #[test]
    fn infinity_axiom_has_no_small_model() {
        let d = run("(forall x !t(x, x)) & forall x exists y t(x, y)", Logic::L2Trans, 6);
        assert!(matches!(d.outcome, DecisionOutcome::NoModelUpTo(6)));
        let d = run("forall x exists y x < y", Logic::L2PoUnary, 6);
        assert!(matches!(d.outcome, DecisionOutcome::NoModelUpTo(6)));
    }

    #[test]
    fn both_polarities_give_size_two() {
        let d = run("(exists x p(x)) & exists x !p(x)", Logic::L2, 4);
        let DecisionOutcome::Sat(s) = d.outcome else { panic!() };
        assert_eq!(s.size(), 2);
        let d = run("(exists x p(x)) & exists x !p(x) & forall x forall y (x < y -> p(x))", Logic::L2PoUnary, 4);
        assert!(matches!(d.outcome, DecisionOutcome::Sat(_)));
    }

    #[test]
    fn logic_must_fit_the_signature() {
        let (phi, sig) = parse_formula_infer("forall x exists y r(x, y)", Distinguished::PartialOrder).unwrap();
        assert!(decide(&phi, &sig, Logic::L2PoUnary, &SearchBudget::default()).is_err());
    }
}
