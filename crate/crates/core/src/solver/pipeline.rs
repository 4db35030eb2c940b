//! Runs a formula through every transformation that applies to its logic,
//! with each construction's postconditions checked on the way.

use std::fmt;

use super::search::{find_model_up_to, BoundedOutcome, SearchBudget};
use crate::cliques::{abstract_model, bound_cliques, cliques_of, cliquify, expand_model, CellBudget, CliqueError};
use crate::cuts::{find_equivalent, shrink_block_count};
use crate::factorization::{factorize_for, fc_holds, is_thin, thin, TypedPartialOrder};
use crate::hat::shrink_blocks;
use crate::logic::{holds, Formula, Logic, Signature, Structure};
use crate::normal_forms::{
    expand_to_basic, expand_to_transitive, to_basic, to_standard_nf, to_transitive_nf, to_weak_nf, WeakNf,
};
use crate::resolution::{
    eliminate_binaries, eliminated_model, reconstruct_model, spread_witness_check, to_spread, CLAUSE_LIMIT,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageOutcome {
    Passed(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub name: &'static str,
    pub outcome: StageOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub logic: Logic,
    pub stages: Vec<Stage>,
}

impl Report {
    fn pass(&mut self, name: &'static str, detail: impl Into<String>) {
        self.stages.push(Stage { name, outcome: StageOutcome::Passed(detail.into()) });
    }

    fn skip(&mut self, name: &'static str, why: impl Into<String>) {
        self.stages.push(Stage { name, outcome: StageOutcome::Skipped(why.into()) });
    }

    pub fn passed(&self) -> usize {
        self.stages.iter().filter(|s| matches!(s.outcome, StageOutcome::Passed(_))).count()
    }

    pub fn skipped(&self) -> usize {
        self.stages.len() - self.passed()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic: {}", self.logic)?;
        for s in &self.stages {
            match &s.outcome {
                StageOutcome::Passed(d) => writeln!(f, "PASS {}: {d}", s.name)?,
                StageOutcome::Skipped(d) => writeln!(f, "SKIP {}: {d}", s.name)?,
            }
        }
        write!(f, "{} passed, {} skipped", self.passed(), self.skipped())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("the formula's signature does not belong to {0}")]
    WrongLogic(Logic),
    #[error("stage `{stage}` failed: {detail}")]
    Stage { stage: &'static str, detail: String },
}

fn fail(stage: &'static str, e: impl fmt::Display) -> PipelineError {
    PipelineError::Stage { stage, detail: e.to_string() }
}

fn check(stage: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Result<(), PipelineError> {
    if ok {
        Ok(())
    } else {
        Err(fail(stage, detail()))
    }
}

fn satisfied(stage: &'static str, s: &Structure, f: &Formula) -> Result<(), PipelineError> {
    let ok = holds(s, f).map_err(|e| fail(stage, e))?;
    check(stage, ok, || format!("the structure does not satisfy the formula\n{}", crate::syntax::write_structure(s)))
}

fn search(
    r: &mut Report,
    stage: &'static str,
    f: &Formula,
    sig: &Signature,
    budget: &SearchBudget,
) -> Result<Option<Structure>, PipelineError> {
    match find_model_up_to(f, sig, budget).map_err(|e| fail(stage, e))? {
        BoundedOutcome::Sat(s) => {
            r.pass(stage, format!("model of size {}", s.size()));
            Ok(Some(s))
        }
        BoundedOutcome::NoModelUpTo(k) => {
            r.skip(stage, format!("no model up to size {k}; later stages skipped"));
            Ok(None)
        }
        BoundedOutcome::Unknown(why) => {
            r.skip(stage, format!("{why}; later stages skipped"));
            Ok(None)
        }
    }
}

/// Basic forms enumerate pairs of 1-types, so they are only built over at
/// most this many unary predicates.
pub const BASIC_UNARY_LIMIT: usize = 8;

/// Basic forms, factorization, thinning, cut reduction and the hat
/// construction on a model of a weak normal form; returns the final
/// structure over the basic signature, or `None` when the signature is too
/// large to enumerate.
fn basic_chain(r: &mut Report, w: &WeakNf, wsig: &Signature, model: &Structure) -> Result<Option<Structure>, PipelineError> {
    let needed = wsig.unary().len() + 3 * w.multiplicity();
    if needed > BASIC_UNARY_LIMIT {
        r.skip(
            "basic forms",
            format!("{needed} unary predicates exceed the limit of {BASIC_UNARY_LIMIT}; later stages skipped"),
        );
        return Ok(None);
    }
    let (set, dirs) = to_basic(w, wsig).map_err(|e| fail("basic forms", e))?;
    let grown = set.sig.unary().len() - wsig.unary().len();
    check("basic forms", grown == 3 * w.multiplicity(), || format!("signature grew by {grown}"))?;
    let psi = set.to_formula();
    let a = expand_to_basic(model, w, &set, &dirs).map_err(|e| fail("basic forms", e))?;
    satisfied("basic forms", &a, &psi)?;
    r.pass("basic forms", format!("{} formulas, signature grew by {grown}", set.formulas.len()));

    let tpo = TypedPartialOrder::new(a).map_err(|e| fail("factorization", e))?;
    let f = factorize_for(&tpo, &set).map_err(|e| fail("factorization", e))?;
    check("factorization", f.is_unitary(&tpo), || "not unitary".into())?;
    for b in set.fc_subset() {
        let ok = fc_holds(&tpo, &f, b).map_err(|e| fail("factorization", e))?;
        check("factorization", ok, || format!("{} is not controlled", b.kind()))?;
    }
    r.pass("factorization", format!("{} blocks", f.len()));

    let t = thin(&tpo, &f).map_err(|e| fail("thinning", e))?;
    f.validate(&t).map_err(|e| fail("thinning", e))?;
    check("thinning", is_thin(&t, &f).map_err(|e| fail("thinning", e))?, || "output is not thin".into())?;
    satisfied("thinning", t.structure(), &psi)?;
    r.pass("thinning", format!("{} order pairs kept of {}", t.less().count(), tpo.less().count()));

    let (b, g, steps) = shrink_block_count(&t, &f, &set).map_err(|e| fail("cut reduction", e))?;
    let left = find_equivalent(&b, &g).map_err(|e| fail("cut reduction", e))?;
    check("cut reduction", left.is_none(), || "equivalent cuts remain".into())?;
    satisfied("cut reduction", b.structure(), &psi)?;
    r.pass("cut reduction", format!("{steps} reductions, {} blocks left", g.len()));

    let h = shrink_blocks(&b, &g, &set).map_err(|e| fail("block shrinking", e))?;
    r.pass("block shrinking", format!("{} elements from {} sub-blocks", h.structure.size(), h.subs.len()));
    Ok(Some(h.structure.structure().clone()))
}

fn back_to(stage: &'static str, s: &Structure, sig: &Signature, phi: &Formula, r: &mut Report) -> Result<(), PipelineError> {
    let red = s.reduct(sig).map_err(|e| fail(stage, e))?;
    satisfied(stage, &red, phi)?;
    r.pass(stage, format!("model of size {} satisfies the input", red.size()));
    Ok(())
}

/// Runs the chain that applies to `logic` and reports every checked stage.
/// Stages after a failed model search are reported as skipped.
pub fn pipeline_verify(phi: &Formula, sig: &Signature, logic: Logic, budget: &SearchBudget) -> Result<Report, PipelineError> {
    if !logic.admits(sig) {
        return Err(PipelineError::WrongLogic(logic));
    }
    let mut r = Report { logic, stages: Vec::new() };
    match logic {
        Logic::L2 => {
            let (std, star) = to_standard_nf(phi, sig).map_err(|e| fail("standard form", e))?;
            r.pass("standard form", format!("multiplicity {}", std.multiplicity()));
            if let Some(m) = search(&mut r, "model search", &std.to_formula(), &star, budget)? {
                back_to("result", &m, sig, phi, &mut r)?;
            }
        }
        Logic::L2PoUnary => {
            let (w, star) = to_weak_nf(phi, sig).map_err(|e| fail("weak form", e))?;
            r.pass("weak form", format!("multiplicity {}", w.multiplicity()));
            if let Some(m) = search(&mut r, "model search", &w.to_formula(), &star, budget)? {
                if let Some(small) = basic_chain(&mut r, &w, &star, &m)? {
                    back_to("result", &small, sig, phi, &mut r)?;
                }
            }
        }
        Logic::L2Po => {
            let (std, star) = to_standard_nf(phi, sig).map_err(|e| fail("standard form", e))?;
            r.pass("standard form", format!("multiplicity {}", std.multiplicity()));
            let Some(m) = search(&mut r, "model search", &std.to_formula(), &star, budget)? else {
                return Ok(r);
            };
            let sp = to_spread(&std, &star, &m).map_err(|e| fail("spread form", e))?;
            check("spread form", sp.nf.multiplicity() == 3 * std.multiplicity(), || "multiplicity is not 3m".into())?;
            spread_witness_check(&sp.nf, &sp.model).map_err(|e| fail("spread form", e))?;
            r.pass("spread form", format!("model of size {}", sp.model.size()));
            let el = match eliminate_binaries(&sp.nf, &sp.sig, CLAUSE_LIMIT) {
                Ok(el) => el,
                Err(crate::resolution::SpreadError::ClauseLimit(k)) => {
                    r.skip("elimination", format!("resolution closure exceeds {k} clauses"));
                    return Ok(r);
                }
                Err(e) => return Err(fail("elimination", e)),
            };
            let mm = eliminated_model(&sp, &el).map_err(|e| fail("elimination", e))?;
            satisfied("elimination", &mm, &el.weak.to_formula())?;
            let back = reconstruct_model(&sp.nf, &sp.sig, &el, &mm).map_err(|e| fail("elimination", e))?;
            satisfied("elimination", &back.reduct(sig).map_err(|e| fail("elimination", e))?, phi)?;
            r.pass("elimination", format!("{} unary predicates, no binaries", el.sig.unary().len()));
            let Some(small) = basic_chain(&mut r, &el.weak, &el.sig, &mm)? else {
                return Ok(r);
            };
            let small = small.reduct(&el.sig).map_err(|e| fail("reconstruction", e))?;
            let rebuilt = reconstruct_model(&sp.nf, &sp.sig, &el, &small).map_err(|e| fail("reconstruction", e))?;
            r.pass("reconstruction", format!("binaries restored on {} elements", rebuilt.size()));
            back_to("result", &rebuilt, sig, phi, &mut r)?;
        }
        Logic::L2Trans => {
            let (nf, star, std) = to_transitive_nf(phi, sig).map_err(|e| fail("transitive form", e))?;
            r.pass("transitive form", format!("multiplicity {}, {} guards", nf.multiplicity(), nf.guards().len()));
            let Some(m) = search(&mut r, "model search", &std.to_formula(), &star, budget)? else {
                return Ok(r);
            };
            let a = expand_to_transitive(&m, &std, &nf, &star).map_err(|e| fail("transitive form", e))?;
            let b = bound_cliques(&nf, &a).map_err(|e| fail("clique bounding", e))?;
            let d = cliques_of(&b).map_err(|e| fail("clique bounding", e))?;
            r.pass("clique bounding", format!("{} cliques, largest {}", d.len(), d.largest()));
            back_to("clique bounding result", &b, sig, phi, &mut r)?;
            if d.len() < 2 {
                r.skip("clique reduction", "the model is a single clique");
                return Ok(r);
            }
            let c = match cliquify(&nf, &star, d.largest(), &CellBudget::default()) {
                Ok(c) => c,
                Err(CliqueError::Budget(why)) => {
                    r.skip("clique reduction", why);
                    return Ok(r);
                }
                Err(e) => return Err(fail("clique reduction", e)),
            };
            let want = 4 * nf.multiplicity() * d.largest();
            check("clique reduction", c.multiplicity() == want, || format!("multiplicity {} ≠ 4mn", c.multiplicity()))?;
            c.table.check().map_err(|e| fail("clique reduction", e))?;
            r.pass("clique reduction", format!("{} cells, {} diatoms", c.table.cells.len(), c.table.diatoms.len()));
            let hat = abstract_model(&c, &b).map_err(|e| fail("abstraction", e))?;
            r.pass("abstraction", format!("{} elements", hat.size()));
            let back = expand_model(&c, &hat).map_err(|e| fail("expansion", e))?;
            check("expansion", back.size() <= d.largest() * hat.size(), || "expansion too large".into())?;
            r.pass("expansion", format!("{} elements", back.size()));
            back_to("result", &back, sig, phi, &mut r)?;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula_infer;

    fn run(src: &str, logic: Logic) -> Report {
        let (phi, sig) = parse_formula_infer(src, logic.distinguished()).unwrap();
        pipeline_verify(&phi, &sig, logic, &SearchBudget::with_max_size(5)).unwrap()
    }

    #[test]
    fn unary_order_chain() {
        let r = run("forall x exists y (p(x) -> (x < y & !p(y))) & exists x p(x)", Logic::L2PoUnary);
        assert_eq!(r.skipped(), 0, "{r}");
        assert!(r.stages.iter().any(|s| s.name == "block shrinking"));
    }

    #[test]
    fn binary_order_chain() {
        let r = run("forall x exists y (x != y & r(x, y) & !(x < y)) & exists x p(x)", Logic::L2Po);
        assert!(r.stages.iter().any(|s| s.name == "spread form"), "{r}");
    }

    #[test]
    fn two_clique_chain() {
        let r = run("forall x exists y (x != y & !t(x, y) & !t(y, x))", Logic::L2Trans);
        assert!(r.stages.iter().any(|s| s.name == "expansion"), "{r}");
    }

    #[test]
    fn unsatisfiable_input_skips() {
        let r = run("(forall x !t(x, x)) & forall x exists y t(x, y)", Logic::L2Trans);
        assert!(r.skipped() > 0);
    }
}
