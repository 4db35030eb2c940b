//! Transitive normal form: the standard normal form split by the order
//! relation `t` induces between two distinct elements.

use std::fmt;

use super::standard::{to_standard_nf, StandardNf};
use super::NfError;
use crate::logic::{Distinguished, Evaluator, Formula, Signature, Structure, Var};

/// How two distinct elements sit relative to a transitive relation `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransRel {
    /// `t` both ways.
    Equiv,
    /// `t(x,y)` only.
    Less,
    /// `t(y,x)` only.
    Greater,
    /// Neither.
    Incomparable,
}

impl TransRel {
    pub const ALL: [TransRel; 4] = [TransRel::Equiv, TransRel::Less, TransRel::Greater, TransRel::Incomparable];

    pub fn symbol(self) -> &'static str {
        match self {
            TransRel::Equiv => "eq",
            TransRel::Less => "lt",
            TransRel::Greater => "gt",
            TransRel::Incomparable => "inc",
        }
    }

    pub fn reversed(self) -> TransRel {
        match self {
            TransRel::Less => TransRel::Greater,
            TransRel::Greater => TransRel::Less,
            r => r,
        }
    }

    /// Values of `(t(x,y), t(y,x))`.
    pub fn values(self) -> (bool, bool) {
        match self {
            TransRel::Equiv => (true, true),
            TransRel::Less => (true, false),
            TransRel::Greater => (false, true),
            TransRel::Incomparable => (false, false),
        }
    }

    pub fn of(forward: bool, backward: bool) -> TransRel {
        match (forward, backward) {
            (true, true) => TransRel::Equiv,
            (true, false) => TransRel::Less,
            (false, true) => TransRel::Greater,
            (false, false) => TransRel::Incomparable,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// `t_s(a,b)`, including `a ≠ b` where the relation alone does not force it.
    pub fn formula(self, a: Var, b: Var) -> Formula {
        let (f, g) = self.values();
        let lit = |pos: bool, u, v| {
            if pos {
                Formula::Trans(u, v)
            } else {
                Formula::not(Formula::Trans(u, v))
            }
        };
        let mut parts = vec![lit(f, a, b), lit(g, b, a)];
        if f == g {
            parts.push(Formula::neq(a, b));
        }
        Formula::And(parts)
    }

    /// Replaces `t(x,y)` and `t(y,x)` in `f` by their values under this relation.
    pub fn substitute(self, f: &Formula) -> Formula {
        let (fw, bw) = self.values();
        f.map_atoms(&mut |a| match a {
            Formula::Trans(Var::X, Var::Y) => Formula::from_bool(fw),
            Formula::Trans(Var::Y, Var::X) => Formula::from_bool(bw),
            a => a.clone(),
        })
        .simplify()
    }
}

impl fmt::Display for TransRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransRel::Equiv => "≡",
            TransRel::Less => "<",
            TransRel::Greater => ">",
            TransRel::Incomparable => "∼",
        })
    }
}

/// `∀x∃y(p(x) → (t_s(x,y) ∧ θ))`. A missing guard means the conjunct was
/// dropped because `θ` is unsatisfiable in direction `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub guard: Option<String>,
    pub theta: Formula,
}

/// `⋀_s ∀x∀y(t_s(x,y) → η_s) ∧ ⋀_h ⋀_s ∀x∃y(p_{h,s}(x) → (t_s(x,y) ∧ θ_{h,s}))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitiveNf {
    /// Indexed by [`TransRel::index`].
    pub etas: [Formula; 4],
    /// One row per `h`, indexed by [`TransRel::index`].
    pub witnesses: Vec<[Witness; 4]>,
}

fn mentions_cross(f: &Formula) -> bool {
    let mut found = false;
    f.visit_atoms(&mut |a| {
        if matches!(a, Formula::Trans(u, v) if u != v) {
            found = true;
        }
    });
    found
}

impl TransitiveNf {
    pub fn multiplicity(&self) -> usize {
        self.witnesses.len()
    }

    pub fn guards(&self) -> Vec<&str> {
        self.witnesses
            .iter()
            .flat_map(|row| row.iter().filter_map(|w| w.guard.as_deref()))
            .collect()
    }

    pub fn witness(&self, h: usize, s: TransRel) -> &Witness {
        &self.witnesses[h][s.index()]
    }

    pub fn eta(&self, s: TransRel) -> &Formula {
        &self.etas[s.index()]
    }

    pub fn validate(&self) -> Result<(), NfError> {
        let bad = |f: &Formula| {
            !f.is_quantifier_free() || !f.is_equality_free() || mentions_cross(f)
        };
        for (s, eta) in TransRel::ALL.iter().zip(&self.etas) {
            if bad(eta) {
                return Err(NfError::Shape(format!("η_{s} must be quantifier-, equality- and cross-atom-free: {eta}")));
            }
        }
        for row in &self.witnesses {
            for (s, w) in TransRel::ALL.iter().zip(row) {
                if bad(&w.theta) {
                    return Err(NfError::Shape(format!("θ for {s} must be quantifier-, equality- and cross-atom-free")));
                }
            }
        }
        if self.witnesses.is_empty() {
            return Err(NfError::Shape("multiplicity must be at least 1".into()));
        }
        Ok(())
    }

    pub fn to_formula(&self) -> Formula {
        let (x, y) = (Var::X, Var::Y);
        let mut parts = Vec::new();
        for s in TransRel::ALL {
            parts.push(Formula::forall(
                x,
                Formula::forall(y, Formula::implies(s.formula(x, y), self.eta(s).clone())),
            ));
        }
        for row in &self.witnesses {
            for s in TransRel::ALL {
                let w = &row[s.index()];
                if let Some(p) = &w.guard {
                    parts.push(Formula::forall(
                        x,
                        Formula::exists(
                            y,
                            Formula::implies(
                                Formula::unary(p, x),
                                Formula::And(vec![s.formula(x, y), w.theta.clone()]),
                            ),
                        ),
                    ));
                }
            }
        }
        Formula::And(parts)
    }
}

/// Transitive normal form of a sentence over a transitive signature.
///
/// The result entails the input and every model of the input expands to a
/// model of it. Guards whose `θ_{h,s}` is unsatisfiable are not introduced, and
/// the requirement that every element carry some guard of each `h` is folded
/// into every `η_s`.
pub fn to_transitive_nf(phi: &Formula, sig: &Signature) -> Result<(TransitiveNf, Signature, StandardNf), NfError> {
    if sig.distinguished() != Distinguished::Transitive {
        return Err(NfError::Fragment("the transitive normal form needs the distinguished predicate `t`".into()));
    }
    let (std, mut star) = to_standard_nf(phi, sig)?;
    let mut witnesses = Vec::new();
    let mut cover = Vec::new();
    for (h, theta) in std.thetas.iter().enumerate() {
        let mut choices = Vec::new();
        let row: Vec<Witness> = TransRel::ALL
            .iter()
            .map(|&s| {
                let th = s.substitute(theta);
                let guard = if th == Formula::False {
                    None
                } else {
                    let p = star.fresh_unary(&format!("g{h}{}", s.symbol()));
                    choices.push(Formula::unary(&p, Var::X));
                    Some(p)
                };
                Witness { guard, theta: th }
            })
            .collect();
        cover.push(Formula::Or(choices));
        witnesses.push(<[Witness; 4]>::try_from(row).unwrap());
    }
    let etas = TransRel::ALL.map(|s| {
        let mut parts = vec![s.substitute(&std.eta)];
        parts.extend(cover.iter().cloned());
        Formula::And(parts).simplify()
    });
    let t = TransitiveNf { etas, witnesses };
    t.validate()?;
    Ok((t, star, std))
}

/// Interprets the guard predicates in a model of the standard normal form:
/// `p_{h,s}(a)` iff some `b ≠ a` has `t_s(a,b)` and `θ_h[a,b]`. Guard values
/// already present in `a` are overwritten.
pub fn expand_to_transitive(
    a: &Structure,
    std: &StandardNf,
    t: &TransitiveNf,
    star: &Signature,
) -> Result<Structure, NfError> {
    let mut out = a.expand(star)?;
    let n = a.size();
    for p in t.guards() {
        for x in 0..n {
            out.set_unary_by_name(p, x, false)?;
        }
    }
    for (h, theta) in std.thetas.iter().enumerate() {
        let e = Evaluator::new(a, theta)?;
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                let s = TransRel::of(a.dist(x, y), a.dist(y, x));
                if let Some(p) = &t.witness(h, s).guard {
                    if e.pair(x, y) {
                        out.set_unary_by_name(p, x, true)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::holds;
    use crate::solver::{find_model_up_to, BoundedOutcome, SearchBudget};
    use crate::syntax::parse_formula_infer;

    #[test]
    fn infinity_axiom_keeps_two_guards() {
        let (f, sig) = parse_formula_infer("forall x !t(x, x) & forall x exists y t(x, y)", Distinguished::Transitive).unwrap();
        let (t, star, _) = to_transitive_nf(&f, &sig).unwrap();
        assert_eq!(t.guards().len(), 2);
        assert!(t.witness(0, TransRel::Incomparable).guard.is_none());
        let out = find_model_up_to(&t.to_formula(), &star, &SearchBudget::with_max_size(5)).unwrap();
        assert!(matches!(out, BoundedOutcome::NoModelUpTo(5)));
    }

    #[test]
    fn cross_atoms_are_substituted() {
        let (f, sig) = parse_formula_infer("forall x exists y (x != y & t(x, y) & p(y))", Distinguished::Transitive).unwrap();
        let (t, _, _) = to_transitive_nf(&f, &sig).unwrap();
        assert_eq!(t.witness(0, TransRel::Incomparable).theta, Formula::False);
        assert_eq!(t.witness(0, TransRel::Greater).theta, Formula::False);
        assert_ne!(t.witness(0, TransRel::Less).theta, Formula::False);
    }

    #[test]
    fn expansion_is_a_model() {
        let (f, sig) = parse_formula_infer("forall x t(x, x) & exists x p(x)", Distinguished::Transitive).unwrap();
        let (t, star, std) = to_transitive_nf(&f, &sig).unwrap();
        match find_model_up_to(&std.to_formula(), &star.clone(), &SearchBudget::with_max_size(3)).unwrap() {
            BoundedOutcome::Sat(m) => {
                let base = Signature::new(
                    star.unary().iter().filter(|p| !t.guards().contains(&p.as_str())).cloned(),
                    star.binary().iter().cloned(),
                    star.distinguished(),
                )
                .unwrap();
                let m = m.reduct(&base).unwrap();
                let e = expand_to_transitive(&m, &std, &t, &star).unwrap();
                assert!(holds(&e, &t.to_formula()).unwrap());
                assert!(holds(&e, &f).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stale_guards_are_recomputed() {
        // a 2-chain found over the signature with guards may mark the top
        // element as having a witness above it
        let (f, sig) = parse_formula_infer(
            "forall x t(x, x) & forall x exists y (x != y & (t(x, y) & !t(y, x) | t(y, x) & !t(x, y)))",
            Distinguished::Transitive,
        )
        .unwrap();
        let (t, star, std) = to_transitive_nf(&f, &sig).unwrap();
        let mut m = crate::logic::Structure::new(star.clone(), 2);
        for (x, y) in [(0, 0), (1, 1), (1, 0)] {
            m.set_dist(x, y, true);
        }
        for p in t.guards() {
            for x in 0..2 {
                m.set_unary_by_name(p, x, true).unwrap();
            }
        }
        assert!(holds(&m, &std.to_formula()).unwrap());
        let e = expand_to_transitive(&m, &std, &t, &star).unwrap();
        assert!(holds(&e, &t.to_formula()).unwrap());
    }
}
