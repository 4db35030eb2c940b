//! Clauses over the two variables, ordinary binary resolution and 2-type completion.

use std::collections::BTreeSet;
use std::fmt;

use crate::logic::{nnf, Formula, Link, OrderRel, Signature, TwoType, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: Formula,
    pub positive: bool,
}

impl Literal {
    pub fn new(atom: Formula, positive: bool) -> Self {
        Literal { atom, positive }
    }

    pub fn negated(&self) -> Literal {
        Literal { atom: self.atom.clone(), positive: !self.positive }
    }

    pub fn to_formula(&self) -> Formula {
        if self.positive {
            self.atom.clone()
        } else {
            Formula::not(self.atom.clone())
        }
    }

    /// `r(x,y)` or `r(y,x)` with `r` ordinary.
    pub fn is_cross(&self) -> bool {
        is_cross_atom(&self.atom)
    }

    pub fn transposed(&self) -> Literal {
        Literal { atom: self.atom.swap_vars(), positive: self.positive }
    }
}

pub fn is_cross_atom(atom: &Formula) -> bool {
    matches!(atom, Formula::Binary(_, u, v) if u != v)
}

/// A disjunction of literals; the empty clause is `⊥`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(pub BTreeSet<Literal>);

impl Clause {
    pub fn empty() -> Self {
        Clause(BTreeSet::new())
    }

    pub fn from_literals(lits: impl IntoIterator<Item = Literal>) -> Self {
        Clause(lits.into_iter().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|l| l.positive && self.0.contains(&l.negated()))
    }

    pub fn has_cross(&self) -> bool {
        self.0.iter().any(Literal::is_cross)
    }

    pub fn transposed(&self) -> Clause {
        Clause(self.0.iter().map(Literal::transposed).collect())
    }

    pub fn subsumes(&self, other: &Clause) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_formula(&self) -> Formula {
        match self.0.len() {
            0 => Formula::False,
            1 => self.0.iter().next().unwrap().to_formula(),
            _ => Formula::Or(self.0.iter().map(Literal::to_formula).collect()),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// A finite set of clauses, read as their conjunction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseSet(pub BTreeSet<Clause>);

impl ClauseSet {
    pub fn new() -> Self {
        ClauseSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.0.iter()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.0.contains(c)
    }

    /// Inserts unless the clause is a tautology.
    pub fn insert(&mut self, c: Clause) -> bool {
        !c.is_tautology() && self.0.insert(c)
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        ClauseSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn contains_empty(&self) -> bool {
        self.0.iter().any(Clause::is_empty)
    }

    pub fn to_formula(&self) -> Formula {
        match self.0.len() {
            0 => Formula::True,
            1 => self.0.iter().next().unwrap().to_formula(),
            _ => Formula::And(self.0.iter().map(Clause::to_formula).collect()),
        }
    }

    /// Drops every clause that a strictly smaller member subsumes; for display only.
    pub fn reduced(&self) -> ClauseSet {
        let keep = self
            .0
            .iter()
            .filter(|c| !self.0.iter().any(|d| d != *c && d.subsumes(c)))
            .cloned()
            .collect();
        ClauseSet(keep)
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        let mut s = ClauseSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("clause form needs a quantifier-free formula: {0}")]
pub struct QuantifierPresent(pub String);

/// Conjunctive normal form by distribution.
pub fn cnf(f: &Formula) -> Result<ClauseSet, QuantifierPresent> {
    if !f.is_quantifier_free() {
        return Err(QuantifierPresent(f.to_string()));
    }
    fn go(f: &Formula) -> Vec<Clause> {
        match f {
            Formula::True => Vec::new(),
            Formula::False => vec![Clause::empty()],
            Formula::And(gs) => gs.iter().flat_map(go).collect(),
            Formula::Or(gs) => {
                let mut acc = vec![Clause::empty()];
                for g in gs {
                    let part = go(g);
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for c in &acc {
                        for d in &part {
                            let e = Clause(c.0.union(&d.0).cloned().collect());
                            if !e.is_tautology() {
                                next.push(e);
                            }
                        }
                    }
                    acc = next;
                }
                acc
            }
            Formula::Not(a) => vec![Clause::from_literals([Literal::new((**a).clone(), false)])],
            atom => vec![Clause::from_literals([Literal::new(atom.clone(), true)])],
        }
    }
    Ok(go(&nnf(&f.simplify()).simplify()).into_iter().collect())
}

/// `Γ⁻¹`: swaps `x` and `y` throughout.
pub fn transpose(gamma: &ClauseSet) -> ClauseSet {
    gamma.iter().map(Clause::transposed).collect()
}

/// Ordinary binary resolvents of two clauses.
fn resolvents(c: &Clause, d: &Clause) -> Vec<Clause> {
    let mut out = Vec::new();
    for l in c.literals().filter(|l| l.is_cross()) {
        let n = l.negated();
        if d.0.contains(&n) {
            let mut e: BTreeSet<Literal> = c.0.iter().filter(|m| *m != l).cloned().collect();
            e.extend(d.0.iter().filter(|m| **m != n).cloned());
            out.push(Clause(e));
        }
    }
    out
}

/// `[Γ]*`, or `None` once more than `limit` clauses have been produced.
pub fn resolve_closure_bounded(gamma: &ClauseSet, limit: usize) -> Option<ClauseSet> {
    let mut all: Vec<Clause> = Vec::new();
    let mut seen = ClauseSet::new();
    for c in gamma.iter() {
        if seen.insert(c.clone()) {
            all.push(c.clone());
        }
    }
    let mut next = 0;
    while next < all.len() {
        let c = all[next].clone();
        if c.has_cross() {
            for i in 0..next {
                for e in resolvents(&c, &all[i]) {
                    if seen.insert(e.clone()) {
                        all.push(e);
                        if all.len() > limit {
                            return None;
                        }
                    }
                }
            }
        }
        next += 1;
    }
    Some(seen)
}

/// `[Γ]*`: the least superset closed under ordinary binary resolution.
pub fn resolve_closure(gamma: &ClauseSet) -> ClauseSet {
    resolve_closure_bounded(gamma, usize::MAX).expect("no limit")
}

/// `[Γ]°`: the members of a closed set without cross atoms.
pub fn strip_binary(closed: &ClauseSet) -> ClauseSet {
    ClauseSet(closed.iter().filter(|c| !c.has_cross()).cloned().collect())
}

/// The cross atoms `ρ₁, …, ρ_n` in enumeration order: `r(x,y)`, `r(y,x)` per predicate.
pub fn cross_atoms(sig: &Signature) -> Vec<Formula> {
    sig.binary()
        .iter()
        .flat_map(|r| [Formula::Binary(r.clone(), Var::X, Var::Y), Formula::Binary(r.clone(), Var::Y, Var::X)])
        .collect()
}

/// Value of an atom in a pair of distinct elements of 2-type `t`, with the
/// cross atoms read from `cross` (indexed as in [`cross_atoms`]).
pub fn atom_value(sig: &Signature, t: &TwoType, cross: &[Option<bool>], atom: &Formula) -> Option<bool> {
    let side = |v: Var| if v == Var::X { &t.left } else { &t.right };
    match atom {
        Formula::True => Some(true),
        Formula::False => Some(false),
        Formula::Unary(p, v) => Some(side(*v).unary[sig.unary_index(p)?]),
        Formula::Binary(r, u, v) => {
            let i = sig.binary_index(r)?;
            match (u, v) {
                (Var::X, Var::X) => Some(t.left.diagonal[i]),
                (Var::Y, Var::Y) => Some(t.right.diagonal[i]),
                (Var::X, Var::Y) => cross[2 * i],
                (Var::Y, Var::X) => cross[2 * i + 1],
            }
        }
        Formula::Less(u, v) if u == v => Some(false),
        Formula::Less(u, _) => match t.link {
            Link::Order(rel) => Some(rel == if *u == Var::X { OrderRel::Less } else { OrderRel::Greater }),
            _ => None,
        },
        Formula::Trans(u, v) if u == v => Some(side(*u).trans_loop),
        Formula::Trans(u, _) => match t.link {
            Link::Trans { forward, backward } => Some(if *u == Var::X { forward } else { backward }),
            _ => None,
        },
        Formula::Eq(u, v) => Some(u == v),
        _ => None,
    }
}

/// Whether every literal of some clause is false under the partial assignment.
fn violates(sig: &Signature, t: &TwoType, cross: &[Option<bool>], gamma: &ClauseSet) -> bool {
    gamma.iter().any(|c| {
        c.literals()
            .all(|l| atom_value(sig, t, cross, &l.atom) == Some(!l.positive))
    })
}

/// Whether the full 2-type `t` satisfies every clause.
pub fn satisfies(sig: &Signature, t: &TwoType, gamma: &ClauseSet) -> bool {
    let cross: Vec<Option<bool>> = t
        .forward
        .iter()
        .zip(&t.backward)
        .flat_map(|(&f, &b)| [Some(f), Some(b)])
        .collect();
    !violates(sig, t, &cross, gamma)
}

fn with_cross(t: &TwoType, cross: &[Option<bool>]) -> TwoType {
    let mut out = t.clone();
    for i in 0..out.forward.len() {
        out.forward[i] = cross[2 * i].expect("complete");
        out.backward[i] = cross[2 * i + 1].expect("complete");
    }
    out
}

/// Completes a semi-diagonal 2-type against an already closed set `[Γ]*`.
///
/// The cross atoms of `partial` are ignored. Atoms are fixed one at a time in
/// the order of [`cross_atoms`], trying `true` before `false` and never
/// backtracking.
pub fn complete_type_closed(sig: &Signature, partial: &TwoType, closed: &ClauseSet) -> Option<TwoType> {
    let n = 2 * sig.binary().len();
    let mut cross = vec![None; n];
    if violates(sig, partial, &cross, closed) {
        return None;
    }
    for i in 0..n {
        cross[i] = Some(true);
        if violates(sig, partial, &cross, closed) {
            cross[i] = Some(false);
            if violates(sig, partial, &cross, closed) {
                return None;
            }
        }
    }
    Some(with_cross(partial, &cross))
}

/// Some 2-type agreeing with `partial` off the cross atoms and satisfying `Γ`.
pub fn complete_type(sig: &Signature, partial: &TwoType, gamma: &ClauseSet) -> Option<TwoType> {
    complete_type_closed(sig, partial, &resolve_closure(gamma))
}

/// Every completion of `partial` satisfying `Γ`, by enumerating all cross assignments.
pub fn brute_force_completions(sig: &Signature, partial: &TwoType, gamma: &ClauseSet) -> Vec<TwoType> {
    let n = 2 * sig.binary().len();
    (0..1usize << n)
        .map(|bits| (0..n).map(|i| Some(bits >> i & 1 == 1)).collect::<Vec<_>>())
        .filter(|cross| !violates(sig, partial, cross, gamma))
        .map(|cross| with_cross(partial, &cross))
        .collect()
}

/// Whether `partial` satisfies `[Γ]°`, i.e. the clauses it can decide.
pub fn semi_diagonal_satisfies(sig: &Signature, partial: &TwoType, stripped: &ClauseSet) -> bool {
    let cross = vec![None; 2 * sig.binary().len()];
    !violates(sig, partial, &cross, stripped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{enumerate_two_types, evaluate, Distinguished, Structure};
    use crate::syntax::parse_formula;
    use proptest::prelude::*;

    fn sig() -> Signature {
        Signature::new(["p", "q"], ["r"], Distinguished::PartialOrder).unwrap()
    }

    fn clauses(srcs: &[&str]) -> ClauseSet {
        let s = sig();
        srcs.iter().flat_map(|t| cnf(&parse_formula(t, &s).unwrap()).unwrap().0).collect()
    }

    fn clause(src: &str) -> Clause {
        clauses(&[src]).0.into_iter().next().unwrap()
    }

    #[test]
    fn distribution() {
        let s = sig();
        let f = parse_formula("p(x) | (q(y) & r(x, y))", &s).unwrap();
        assert_eq!(cnf(&f).unwrap(), clauses(&["p(x) | q(y)", "p(x) | r(x, y)"]));
        assert_eq!(cnf(&parse_formula("!q(y)", &s).unwrap()).unwrap().len(), 1);
        assert!(cnf(&parse_formula("exists y r(x, y)", &s).unwrap()).is_err());
    }

    #[test]
    fn transposition_is_an_involution() {
        let g = clauses(&["r(x, y)"]);
        assert_eq!(transpose(&g), clauses(&["r(y, x)"]));
        let sym = clauses(&["r(x, y) | r(y, x)"]);
        assert_eq!(transpose(&sym), sym);
        let h = clauses(&["p(x) | !r(y, x)", "q(y)"]);
        assert_eq!(transpose(&transpose(&h)), h);
    }

    #[test]
    fn closure_examples() {
        let g = clauses(&["r(x, y) | p(x)", "!r(x, y) | q(y)"]);
        assert!(resolve_closure(&g).contains(&clause("p(x) | q(y)")));
        let plain = clauses(&["p(x) | q(y)", "r(x, x) | !p(y)"]);
        assert_eq!(resolve_closure(&plain), plain);
        let clash = clauses(&["r(x, y)", "!r(x, y)"]);
        assert!(resolve_closure(&clash).contains_empty());
    }

    #[test]
    fn stripping() {
        assert!(strip_binary(&clauses(&["r(x, y)"])).is_empty());
        assert_eq!(strip_binary(&clauses(&["p(x)"])), clauses(&["p(x)"]));
        assert_eq!(strip_binary(&clauses(&["r(x, x) | p(y)"])).len(), 1);
    }

    #[test]
    fn completion_examples() {
        let s = sig();
        let t = enumerate_two_types(&s)[0].clone();
        assert!(complete_type(&s, &t, &ClauseSet::new()).is_some());
        let g = clauses(&["r(x, y)"]);
        for t in enumerate_two_types(&s) {
            assert!(complete_type(&s, &t, &g).unwrap().forward[0]);
        }
    }

    const ATOMS: &[&str] = &["p(x)", "p(y)", "q(x)", "r(x, y)", "r(y, x)", "r(x, x)", "s(x, y)", "s(y, x)", "x < y"];

    fn arb_clause_set() -> impl Strategy<Value = Vec<Vec<(usize, bool)>>> {
        prop::collection::vec(prop::collection::vec((0..ATOMS.len(), any::<bool>()), 1..4), 0..6)
    }

    fn build(raw: &[Vec<(usize, bool)>], s: &Signature) -> ClauseSet {
        raw.iter()
            .map(|c| {
                Clause::from_literals(c.iter().map(|&(a, pos)| Literal::new(parse_formula(ATOMS[a], s).unwrap(), pos)))
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn completion_agrees_with_enumeration(raw in arb_clause_set()) {
            let s = Signature::new(["p", "q"], ["r", "s"], Distinguished::PartialOrder).unwrap();
            let g = build(&raw, &s);
            let closed = resolve_closure(&g);
            let stripped = strip_binary(&closed);
            for t in enumerate_two_types(&s).iter().filter(|t| t.forward.iter().chain(&t.backward).all(|b| !b)) {
                let fast = complete_type_closed(&s, t, &closed);
                let all = brute_force_completions(&s, t, &g);
                prop_assert_eq!(fast.is_some(), !all.is_empty());
                prop_assert_eq!(semi_diagonal_satisfies(&s, t, &stripped), !all.is_empty());
                if let Some(u) = fast {
                    prop_assert!(satisfies(&s, &u, &g));
                    prop_assert!(all.contains(&u));
                }
            }
        }

        #[test]
        fn closure_is_sound(raw in arb_clause_set()) {
            let s = Signature::new(["p", "q"], ["r", "s"], Distinguished::PartialOrder).unwrap();
            let g = build(&raw, &s);
            let closed = resolve_closure(&g);
            for t in enumerate_two_types(&s) {
                if satisfies(&s, &t, &g) {
                    prop_assert!(satisfies(&s, &t, &closed));
                }
            }
        }

        #[test]
        fn cnf_is_equivalent(raw in arb_clause_set(), flip in any::<bool>()) {
            // a random formula: a disjunction of conjunctions, optionally negated
            let s = Signature::new(["p", "q"], ["r", "s"], Distinguished::PartialOrder).unwrap();
            let f = Formula::Or(raw.iter().map(|c| Formula::And(c.iter().map(|&(a, pos)| {
                Literal::new(parse_formula(ATOMS[a], &s).unwrap(), pos).to_formula()
            }).collect())).collect());
            let f = if flip { Formula::not(f) } else { f };
            let g = cnf(&f).unwrap().to_formula();
            for t in enumerate_two_types(&s) {
                let mut m = Structure::new(s.clone(), 2);
                m.set_two_type(0, 1, &t);
                for asg in [[Some(0), Some(1)], [Some(0), Some(0)], [Some(1), Some(1)]] {
                    prop_assert_eq!(evaluate(&m, &f, asg).unwrap(), evaluate(&m, &g, asg).unwrap());
                }
            }
        }
    }
}
