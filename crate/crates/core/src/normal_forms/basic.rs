//! Reduction of weak normal forms over a partial order and unary predicates to
//! conjunctions of basic formulas.

use std::fmt;

use super::standard::WeakNf;
use super::NfError;
use crate::logic::{enumerate_one_types, Distinguished, Evaluator, Formula, OneType, OrderRel, Signature, Structure, Var};

/// One conjunct of a basic set. `α`, `β` are 1-types (distinct where two are
/// given) and `μ` is a pure Boolean formula in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basic {
    /// At most one α-element.
    B1a(OneType),
    /// No α-element or no β-element.
    B1b(OneType, OneType),
    /// Distinct α-elements are incomparable.
    B2a(OneType),
    /// Every α-element is incomparable to every β-element.
    B2b(OneType, OneType),
    /// Every α-element is below every β-element.
    B3(OneType, OneType),
    /// No α-element is above a β-element.
    B4(OneType, OneType),
    /// The α-elements form a chain.
    B5a(OneType),
    /// Every α-element is comparable to every β-element.
    B5b(OneType, OneType),
    /// Every α-element has a μ-element above it that is not of type α.
    B6(OneType, Formula),
    /// Every α-element has a μ-element below it that is not of type α.
    B7(OneType, Formula),
    /// Every α-element has an incomparable μ-element.
    B8(OneType, Formula),
    /// Every element satisfies μ.
    B9(Formula),
    /// Some element satisfies μ.
    B10(Formula),
}

impl Basic {
    pub fn kind(&self) -> &'static str {
        match self {
            Basic::B1a(_) => "B1a",
            Basic::B1b(..) => "B1b",
            Basic::B2a(_) => "B2a",
            Basic::B2b(..) => "B2b",
            Basic::B3(..) => "B3",
            Basic::B4(..) => "B4",
            Basic::B5a(_) => "B5a",
            Basic::B5b(..) => "B5b",
            Basic::B6(..) => "B6",
            Basic::B7(..) => "B7",
            Basic::B8(..) => "B8",
            Basic::B9(_) => "B9",
            Basic::B10(_) => "B10",
        }
    }

    /// Whether the formula is of a factor-controllable kind (B3 or B5b).
    pub fn is_factor_controllable(&self) -> bool {
        matches!(self, Basic::B3(..) | Basic::B5b(..))
    }

    pub fn to_formula(&self, sig: &Signature) -> Formula {
        use Formula as F;
        let (x, y) = (Var::X, Var::Y);
        let ty = |t: &OneType, v| t.to_formula(sig, v);
        let universal = |a: &OneType, guard: Formula, goal: Formula| {
            F::forall(x, F::implies(ty(a, x), F::forall(y, F::implies(guard, goal))))
        };
        let neq = F::neq(x, y);
        match self {
            Basic::B1a(a) => universal(a, ty(a, y), F::Eq(x, y)),
            Basic::B1b(a, b) => universal(a, ty(b, y), F::Eq(x, y)),
            Basic::B2a(a) => universal(a, F::And(vec![ty(a, y), neq]), F::incomparable(x, y)),
            Basic::B2b(a, b) => universal(a, ty(b, y), F::incomparable(x, y)),
            Basic::B3(a, b) => universal(a, ty(b, y), F::Less(x, y)),
            Basic::B4(a, b) => universal(a, ty(b, y), F::Or(vec![F::Less(x, y), F::incomparable(x, y)])),
            Basic::B5a(a) => universal(a, F::And(vec![ty(a, y), neq]), F::Or(vec![F::Less(x, y), F::Less(y, x)])),
            Basic::B5b(a, b) => universal(a, ty(b, y), F::Or(vec![F::Less(x, y), F::Less(y, x)])),
            Basic::B6(a, mu) | Basic::B7(a, mu) => {
                let step = if matches!(self, Basic::B6(..)) { F::Less(x, y) } else { F::Less(y, x) };
                F::forall(
                    x,
                    F::implies(
                        ty(a, x),
                        F::exists(y, F::And(vec![mu.swap_vars(), F::not(ty(a, y)), step])),
                    ),
                )
            }
            Basic::B8(a, mu) => F::forall(
                x,
                F::implies(ty(a, x), F::exists(y, F::And(vec![mu.swap_vars(), F::incomparable(x, y)]))),
            ),
            Basic::B9(mu) => F::forall(x, mu.clone()),
            Basic::B10(mu) => F::exists(x, mu.clone()),
        }
    }
}

/// A finite set of basic formulas over a unary signature with `<`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSet {
    pub sig: Signature,
    pub formulas: Vec<Basic>,
}

impl BasicSet {
    pub fn to_formula(&self) -> Formula {
        Formula::And(self.formulas.iter().map(|b| b.to_formula(&self.sig)).collect())
    }

    /// The factor-controllable members.
    pub fn fc_subset(&self) -> Vec<&Basic> {
        self.formulas.iter().filter(|b| b.is_factor_controllable()).collect()
    }

    /// The members that fail in `a`.
    pub fn failures(&self, a: &Structure) -> Vec<&Basic> {
        self.formulas
            .iter()
            .filter(|b| {
                let f = b.to_formula(&self.sig);
                !Evaluator::new(a, &f).and_then(|e| e.eval([None, None])).unwrap_or(false)
            })
            .collect()
    }
}

impl fmt::Display for BasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.formulas {
            writeln!(f, "{}: {}", b.kind(), b.to_formula(&self.sig))?;
        }
        Ok(())
    }
}

/// The fresh predicates that choose a witness direction for each `θ_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionPredicates {
    pub less: Vec<String>,
    pub greater: Vec<String>,
    pub incomparable: Vec<String>,
}

/// Replaces the unary atoms of `f` by the truth values fixed by `alpha` (on `x`) and `beta` (on `y`).
fn fix_unary(f: &Formula, sig: &Signature, alpha: Option<&OneType>, beta: Option<&OneType>) -> Formula {
    f.map_atoms(&mut |a| match a {
        Formula::Unary(p, v) => {
            let t = if *v == Var::X { alpha } else { beta };
            match (t, sig.unary_index(p)) {
                (Some(t), Some(i)) => {
                    if t.unary[i] {
                        Formula::True
                    } else {
                        Formula::False
                    }
                }
                _ => a.clone(),
            }
        }
        a => a.clone(),
    })
    .simplify()
}

/// Fixes the order relation between `x` and `y`.
fn fix_order(f: &Formula, rel: OrderRel) -> Formula {
    f.map_atoms(&mut |a| match a {
        Formula::Less(u, v) if u == v => Formula::False,
        Formula::Less(u, _) => {
            let holds = if *u == Var::X { rel == OrderRel::Less } else { rel == OrderRel::Greater };
            if holds {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::Eq(u, v) => {
            if u == v {
                Formula::True
            } else {
                Formula::False
            }
        }
        a => a.clone(),
    })
    .simplify()
}

/// Conjunction of basic formulas, over the signature extended by `3m` fresh
/// predicates, that has exactly the same finite models up to expansion.
pub fn to_basic(w: &WeakNf, sig: &Signature) -> Result<(BasicSet, DirectionPredicates), NfError> {
    if sig.distinguished() != Distinguished::PartialOrder || !sig.binary().is_empty() {
        return Err(NfError::Fragment("basic formulas need a partial order and unary predicates only".into()));
    }
    w.validate()?;
    let mut star = sig.clone();
    let mut out: Vec<Basic> = Vec::new();
    let push = |b: Basic, out: &mut Vec<Basic>| {
        if !out.contains(&b) {
            out.push(b)
        }
    };
    for z in &w.zetas {
        push(Basic::B10(z.simplify()), &mut out);
    }
    let mut dirs = DirectionPredicates { less: Vec::new(), greater: Vec::new(), incomparable: Vec::new() };
    for _ in &w.thetas {
        let lt = star.fresh_unary("dlt");
        let gt = star.fresh_unary("dgt");
        let inc = star.fresh_unary("dinc");
        push(
            Basic::B9(Formula::Or(vec![
                Formula::unary(&lt, Var::X),
                Formula::unary(&gt, Var::X),
                Formula::unary(&inc, Var::X),
            ])),
            &mut out,
        );
        dirs.less.push(lt);
        dirs.greater.push(gt);
        dirs.incomparable.push(inc);
    }
    let types = enumerate_one_types(&star);
    for (h, theta) in w.thetas.iter().enumerate() {
        for (rel, names) in [
            (OrderRel::Less, &dirs.less),
            (OrderRel::Greater, &dirs.greater),
            (OrderRel::Incomparable, &dirs.incomparable),
        ] {
            let guard = star.unary_index(&names[h]).unwrap();
            for alpha in types.iter().filter(|t| t.unary[guard]) {
                let mu = fix_order(&fix_unary(theta, &star, Some(alpha), None), rel).swap_vars();
                let b = match rel {
                    OrderRel::Less => Basic::B6(alpha.clone(), mu),
                    OrderRel::Greater => Basic::B7(alpha.clone(), mu),
                    OrderRel::Incomparable => Basic::B8(alpha.clone(), mu),
                };
                push(b, &mut out);
            }
        }
    }
    for alpha in &types {
        for beta in &types {
            let fixed = fix_unary(&w.eta, &star, Some(alpha), Some(beta));
            let allowed: Vec<bool> = OrderRel::ALL
                .iter()
                .map(|&rel| match fix_order(&fixed, rel) {
                    Formula::True => Ok(true),
                    Formula::False => Ok(false),
                    other => Err(NfError::Fragment(format!("η is not over unary predicates and `<`: {other}"))),
                })
                .collect::<Result<_, _>>()?;
            let same = alpha == beta;
            let (a, b) = (alpha.clone(), beta.clone());
            let basic = match (allowed[0], allowed[1], allowed[2]) {
                (true, true, true) => continue,
                (false, false, false) => {
                    if same {
                        Basic::B1a(a)
                    } else {
                        Basic::B1b(a, b)
                    }
                }
                (false, false, true) => {
                    if same {
                        Basic::B2a(a)
                    } else {
                        Basic::B2b(a, b)
                    }
                }
                (true, false, false) => {
                    if same {
                        Basic::B1a(a)
                    } else {
                        Basic::B3(a, b)
                    }
                }
                (false, true, false) => {
                    if same {
                        Basic::B1a(a)
                    } else {
                        Basic::B3(b, a)
                    }
                }
                (true, false, true) => {
                    if same {
                        Basic::B2a(a)
                    } else {
                        Basic::B4(a, b)
                    }
                }
                (false, true, true) => {
                    if same {
                        Basic::B2a(a)
                    } else {
                        Basic::B4(b, a)
                    }
                }
                (true, true, false) => {
                    if same {
                        Basic::B5a(a)
                    } else {
                        Basic::B5b(a, b)
                    }
                }
            };
            push(basic, &mut out);
        }
    }
    Ok((BasicSet { sig: star, formulas: out }, dirs))
}

/// Interprets the direction predicates in a model of the weak normal form.
pub fn expand_to_basic(
    a: &Structure,
    w: &WeakNf,
    set: &BasicSet,
    dirs: &DirectionPredicates,
) -> Result<Structure, NfError> {
    let mut out = a.expand(&set.sig)?;
    let n = a.size();
    for (h, theta) in w.thetas.iter().enumerate() {
        let e = Evaluator::new(a, theta)?;
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                if !e.pair(x, y) {
                    continue;
                }
                let name = if a.dist(x, y) {
                    &dirs.less[h]
                } else if a.dist(y, x) {
                    &dirs.greater[h]
                } else {
                    &dirs.incomparable[h]
                };
                out.set_unary_by_name(name, x, true)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::holds;
    use crate::normal_forms::to_weak_nf;
    use crate::syntax::parse_formula_infer;

    #[test]
    fn signature_grows_by_three_per_witness() {
        let (f, sig) = parse_formula_infer(
            "forall x exists y (x < y | p(y)) & forall x forall y (p(x) & p(y) -> x = y | x < y | y < x)",
            Distinguished::PartialOrder,
        )
        .unwrap();
        let (w, wsig) = to_weak_nf(&f, &sig).unwrap();
        let (set, _) = to_basic(&w, &wsig).unwrap();
        assert_eq!(set.sig.unary().len(), wsig.unary().len() + 3 * w.multiplicity());
        assert!(set.formulas.iter().any(|b| matches!(b, Basic::B5a(_))));
    }

    #[test]
    fn expansion_satisfies_basic_set() {
        let (f, sig) = parse_formula_infer(
            "exists x p(x) & forall x (p(x) -> exists y (x < y & !p(y)))",
            Distinguished::PartialOrder,
        )
        .unwrap();
        let (w, wsig) = to_weak_nf(&f, &sig).unwrap();
        let (set, dirs) = to_basic(&w, &wsig).unwrap();
        // expand the model of the original formula to the weak form first
        let model = crate::solver::find_model(&w.to_formula(), &wsig, 2, &Default::default()).unwrap();
        if let crate::solver::SizeOutcome::Sat(m) = model {
            let e = expand_to_basic(&m, &w, &set, &dirs).unwrap();
            assert!(holds(&e, &set.to_formula()).unwrap(), "{:?}", set.failures(&e));
        } else {
            panic!("weak form should be satisfiable at size 2");
        }
    }
}
