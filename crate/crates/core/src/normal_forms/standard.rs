use super::NfError;
use crate::logic::{Formula, Signature, Var};

/// `∀x∀y(x=y ∨ η) ∧ ⋀_h ∀x∃y(x≠y ∧ θ_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardNf {
    pub eta: Formula,
    pub thetas: Vec<Formula>,
}

/// A standard normal form with extra conjuncts `∃x.ζ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakNf {
    pub zetas: Vec<Formula>,
    pub eta: Formula,
    pub thetas: Vec<Formula>,
}

fn universal_part(eta: &Formula) -> Formula {
    Formula::forall(
        Var::X,
        Formula::forall(Var::Y, Formula::Or(vec![Formula::Eq(Var::X, Var::Y), eta.clone()])),
    )
}

fn witness_part(theta: &Formula) -> Formula {
    Formula::forall(
        Var::X,
        Formula::exists(Var::Y, Formula::And(vec![Formula::neq(Var::X, Var::Y), theta.clone()])),
    )
}

fn check_matrix(f: &Formula, what: &str) -> Result<(), NfError> {
    if !f.is_quantifier_free() || !f.is_equality_free() {
        return Err(NfError::Shape(format!("{what} must be quantifier- and equality-free: {f}")));
    }
    Ok(())
}

impl StandardNf {
    pub fn multiplicity(&self) -> usize {
        self.thetas.len()
    }

    pub fn to_formula(&self) -> Formula {
        let mut parts = vec![universal_part(&self.eta)];
        parts.extend(self.thetas.iter().map(witness_part));
        Formula::And(parts)
    }

    pub fn validate(&self) -> Result<(), NfError> {
        if self.thetas.is_empty() {
            return Err(NfError::Shape("at least one witness conjunct is required".into()));
        }
        check_matrix(&self.eta, "η")?;
        self.thetas.iter().try_for_each(|t| check_matrix(t, "θ"))
    }
}

impl WeakNf {
    pub fn multiplicity(&self) -> usize {
        self.thetas.len()
    }

    pub fn to_formula(&self) -> Formula {
        let mut parts: Vec<Formula> = self.zetas.iter().map(|z| Formula::exists(Var::X, z.clone())).collect();
        parts.push(universal_part(&self.eta));
        parts.extend(self.thetas.iter().map(witness_part));
        Formula::And(parts)
    }

    pub fn validate(&self) -> Result<(), NfError> {
        if self.thetas.is_empty() {
            return Err(NfError::Shape("at least one witness conjunct is required".into()));
        }
        for z in &self.zetas {
            check_matrix(z, "ζ")?;
            if z.free_mask() & 2 != 0 {
                return Err(NfError::Shape(format!("ζ may only mention x: {z}")));
            }
        }
        check_matrix(&self.eta, "η")?;
        self.thetas.iter().try_for_each(|t| check_matrix(t, "θ"))
    }

    /// Recognises a formula that is already written in weak normal form.
    pub fn recognize(f: &Formula) -> Option<WeakNf> {
        let mut zetas = Vec::new();
        let mut etas = Vec::new();
        let mut thetas = Vec::new();
        for c in f.conjuncts() {
            match c {
                Formula::Exists(Var::X, z) if z.is_quantifier_free() && z.free_mask() & 2 == 0 => {
                    zetas.push((**z).clone())
                }
                Formula::Forall(Var::X, inner) => match &**inner {
                    Formula::Forall(Var::Y, body) => match &**body {
                        Formula::Or(ds) if ds.len() >= 2 && ds[0] == Formula::Eq(Var::X, Var::Y) => {
                            let rest = if ds.len() == 2 { ds[1].clone() } else { Formula::Or(ds[1..].to_vec()) };
                            etas.push(rest)
                        }
                        _ => return None,
                    },
                    Formula::Exists(Var::Y, body) => match &**body {
                        Formula::And(cs) if cs.len() >= 2 && cs[0] == Formula::neq(Var::X, Var::Y) => {
                            let rest = if cs.len() == 2 { cs[1].clone() } else { Formula::And(cs[1..].to_vec()) };
                            thetas.push(rest)
                        }
                        _ => return None,
                    },
                    _ => return None,
                },
                _ => return None,
            }
        }
        let w = WeakNf {
            zetas,
            eta: if etas.len() == 1 { etas.pop().unwrap() } else { Formula::And(etas) },
            thetas,
        };
        w.validate().ok().map(|_| w)
    }
}

/// Replaces each `∃x.ζ` by `∀x∃y(x≠y ∧ (ζ(x) ∨ ζ(y)))`, valid on domains of size at least 2.
pub fn weak_to_standard(w: &WeakNf) -> StandardNf {
    let mut thetas = w.thetas.clone();
    for z in &w.zetas {
        thetas.push(Formula::Or(vec![z.clone(), z.swap_vars()]).simplify());
    }
    StandardNf { eta: w.eta.clone(), thetas }
}

/// `χ` restricted to pairs of distinct elements: equalities become false.
fn distinct_part(chi: &Formula) -> Formula {
    chi.map_atoms(&mut |a| match a {
        Formula::Eq(u, v) if u == v => Formula::True,
        Formula::Eq(..) => Formula::False,
        a => a.clone(),
    })
    .simplify()
}

/// `χ(x,x)`.
fn diagonal_part(chi: &Formula) -> Formula {
    chi.collapse_to(Var::X).simplify()
}

/// Accumulates the pieces of a normal form while fresh predicates are introduced.
struct Builder {
    sig: Signature,
    universals: Vec<Formula>,
    witnesses: Vec<Formula>,
    zetas: Vec<Formula>,
}

impl Builder {
    /// `χ` must hold for every pair, equal or not.
    fn all_pairs(&mut self, chi: &Formula) {
        self.universals.push(distinct_part(chi));
        self.universals.push(diagonal_part(chi));
    }

    /// Replaces every quantified subformula by a fresh unary atom, bottom-up.
    fn abstract_quantifiers(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let inner = self.abstract_quantifiers(body);
                let chi = if *v == Var::X { inner.swap_vars() } else { inner };
                let p = self.sig.fresh_unary("sk");
                let px = Formula::unary(&p, Var::X);
                let not_px = Formula::not(px.clone());
                let (dist, diag) = (distinct_part(&chi), diagonal_part(&chi));
                if matches!(f, Formula::Forall(..)) {
                    // p(x) -> ∀y χ
                    self.universals.push(Formula::Or(vec![not_px.clone(), dist.clone()]).simplify());
                    self.universals.push(Formula::Or(vec![not_px, diag.clone()]).simplify());
                    // ¬p(x) -> ∃y ¬χ
                    self.witnesses.push(
                        Formula::Or(vec![px, Formula::not(diag), Formula::not(dist)]).simplify(),
                    );
                } else {
                    // p(x) -> ∃y χ
                    self.witnesses.push(Formula::Or(vec![not_px, diag.clone(), dist.clone()]).simplify());
                    // ¬p(x) -> ∀y ¬χ
                    self.universals.push(Formula::Or(vec![px.clone(), Formula::not(dist)]).simplify());
                    self.universals.push(Formula::Or(vec![px, Formula::not(diag)]).simplify());
                }
                Formula::unary(&p, v.other())
            }
            Formula::Not(g) => Formula::not(self.abstract_quantifiers(g)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| self.abstract_quantifiers(g)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| self.abstract_quantifiers(g)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(self.abstract_quantifiers(a), self.abstract_quantifiers(b))
            }
            Formula::Iff(a, b) => Formula::iff(self.abstract_quantifiers(a), self.abstract_quantifiers(b)),
            atom => atom.clone(),
        }
    }

    fn top_level(&mut self, c: &Formula) {
        match c {
            Formula::True => {}
            Formula::Forall(v, body) => {
                let body = if *v == Var::Y { body.swap_vars() } else { (**body).clone() };
                match &body {
                    Formula::Forall(Var::Y, inner) => {
                        let chi = self.abstract_quantifiers(inner);
                        self.all_pairs(&chi);
                    }
                    Formula::Exists(Var::Y, inner) => {
                        let chi = self.abstract_quantifiers(inner);
                        let theta = Formula::Or(vec![diagonal_part(&chi), distinct_part(&chi)]).simplify();
                        self.witnesses.push(theta);
                    }
                    _ => {
                        let rho = self.abstract_quantifiers(&body);
                        self.all_pairs(&rho);
                    }
                }
            }
            Formula::Exists(v, body) => {
                let body = if *v == Var::Y { body.swap_vars() } else { (**body).clone() };
                let rho = self.abstract_quantifiers(&body);
                if rho.free_mask() & 2 == 0 {
                    self.zetas.push(diagonal_part(&rho));
                } else {
                    let whole = self.abstract_quantifiers(&Formula::exists(Var::X, rho));
                    self.all_pairs(&whole);
                }
            }
            other => {
                let rho = self.abstract_quantifiers(other);
                self.all_pairs(&rho);
            }
        }
    }
}

/// Literals over a single variable that η forces on every element.
fn unit_literals(eta: &Formula) -> Vec<(Formula, bool)> {
    let mut out = Vec::new();
    for c in eta.conjuncts() {
        let (atom, positive) = match c {
            Formula::Not(a) => ((**a).clone(), false),
            a => (a.clone(), true),
        };
        let single = match &atom {
            Formula::Unary(..) => true,
            Formula::Binary(_, a, b) | Formula::Trans(a, b) => a == b,
            _ => false,
        };
        if single {
            out.push((atom.collapse_to(Var::X), positive));
        }
    }
    out
}

fn apply_units(f: &Formula, units: &[(Formula, bool)]) -> Formula {
    f.map_atoms(&mut |a| {
        let is_single = match a {
            Formula::Unary(..) => true,
            Formula::Binary(_, u, v) | Formula::Trans(u, v) => u == v,
            _ => false,
        };
        if is_single {
            let key = a.collapse_to(Var::X);
            if let Some((_, b)) = units.iter().find(|(u, _)| *u == key) {
                return if *b { Formula::True } else { Formula::False };
            }
        }
        a.clone()
    })
    .simplify()
}

/// Since η holds between any two distinct elements and domains have at least two
/// elements, a single-variable literal conjunct of η holds everywhere; substitute it.
fn propagate(universals: Vec<Formula>, witnesses: Vec<Formula>, zetas: Vec<Formula>) -> (Formula, Vec<Formula>, Vec<Formula>) {
    let mut eta = Formula::And(universals).simplify();
    let mut thetas = witnesses;
    let mut zetas = zetas;
    loop {
        let units = unit_literals(&eta);
        if units.is_empty() {
            break;
        }
        let kept: Vec<Formula> = units
            .iter()
            .map(|(a, b)| if *b { a.clone() } else { Formula::not(a.clone()) })
            .collect();
        let rest: Vec<Formula> = eta.conjuncts().into_iter().map(|c| apply_units(c, &units)).collect();
        let next = Formula::And(kept.iter().cloned().chain(rest).collect()).simplify();
        thetas = thetas.iter().map(|t| apply_units(t, &units)).collect();
        zetas = zetas.iter().map(|z| apply_units(z, &units)).collect();
        if next == eta {
            break;
        }
        eta = next;
        if eta == Formula::False {
            break;
        }
    }
    (eta, thetas, zetas)
}

fn build(phi: &Formula, sig: &Signature) -> Result<Builder, NfError> {
    if !phi.is_sentence() {
        return Err(NfError::NotASentence(phi.to_string()));
    }
    let mut b = Builder {
        sig: sig.clone(),
        universals: Vec::new(),
        witnesses: Vec::new(),
        zetas: Vec::new(),
    };
    let simplified = phi.simplify();
    for c in simplified.conjuncts() {
        b.top_level(c);
    }
    Ok(b)
}

/// Weak normal form of a sentence, with its expanded signature.
///
/// The result entails the input, and every model of the input of size at
/// least 2 expands to a model of the result.
pub fn to_weak_nf(phi: &Formula, sig: &Signature) -> Result<(WeakNf, Signature), NfError> {
    let b = build(phi, sig)?;
    let (eta, mut thetas, zetas) = propagate(b.universals, b.witnesses, b.zetas);
    if thetas.is_empty() {
        thetas.push(Formula::True);
    }
    let w = WeakNf { zetas, eta, thetas };
    w.validate()?;
    Ok((w, b.sig))
}

/// Standard normal form of a sentence, with its expanded signature.
pub fn to_standard_nf(phi: &Formula, sig: &Signature) -> Result<(StandardNf, Signature), NfError> {
    let b = build(phi, sig)?;
    let (eta, mut thetas, zetas) = propagate(b.universals, b.witnesses, b.zetas);
    for z in &zetas {
        thetas.push(Formula::Or(vec![z.clone(), z.swap_vars()]).simplify());
    }
    if thetas.is_empty() {
        thetas.push(Formula::True);
    }
    let s = StandardNf { eta, thetas };
    s.validate()?;
    Ok((s, b.sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Distinguished;
    use crate::syntax::parse_formula_infer;

    fn nf(src: &str) -> StandardNf {
        let (f, sig) = parse_formula_infer(src, Distinguished::None).unwrap();
        to_standard_nf(&f, &sig).unwrap().0
    }

    #[test]
    fn existential_sentence() {
        let s = nf("exists x p(x)");
        assert_eq!(s.multiplicity(), 1);
        assert_eq!(
            s.thetas[0],
            Formula::Or(vec![Formula::unary("p", Var::X), Formula::unary("p", Var::Y)])
        );
    }

    #[test]
    fn universal_sentence() {
        let s = nf("forall x p(x)");
        assert_eq!(s.multiplicity(), 1);
        assert_eq!(s.thetas[0], Formula::True);
        assert!(s.eta.conjuncts().contains(&&Formula::unary("p", Var::X)));
    }

    #[test]
    fn rejects_free_variables() {
        let (f, sig) = parse_formula_infer("p(x)", Distinguished::None).unwrap();
        assert!(matches!(to_standard_nf(&f, &sig), Err(NfError::NotASentence(_))));
    }

    #[test]
    fn weak_form_and_recognition() {
        let (f, sig) = parse_formula_infer("exists x p(x) & forall x exists y r(x, y)", Distinguished::None).unwrap();
        let (w, _) = to_weak_nf(&f, &sig).unwrap();
        assert_eq!(w.zetas, vec![Formula::unary("p", Var::X)]);
        assert_eq!(WeakNf::recognize(&w.to_formula()), Some(w.clone()));
        assert_eq!(weak_to_standard(&w).multiplicity(), w.multiplicity() + 1);
    }

    #[test]
    fn units_propagate_into_witnesses() {
        let (f, sig) =
            parse_formula_infer("forall x !t(x, x) & forall x exists y t(x, y)", Distinguished::Transitive).unwrap();
        let (s, _) = to_standard_nf(&f, &sig).unwrap();
        assert_eq!(s.thetas, vec![Formula::Trans(Var::X, Var::Y)]);
    }
}
