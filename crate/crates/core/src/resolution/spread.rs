//! Spread normal form, its construction from a model, elimination of the
//! ordinary binary predicates and the reverse model construction.

use std::collections::{BTreeMap, BTreeSet};

use super::clauses::{
    cnf, complete_type_closed, resolve_closure_bounded, semi_diagonal_satisfies, strip_binary, transpose, ClauseSet,
};
use super::duplicate::{duplicate_nonroyal, kings_of, DuplicationError};
use crate::logic::{
    bits_for, enumerate_one_types, evaluate, holds, label_unary, Distinguished, Evaluator, Formula, LogicError,
    Signature, Structure, Var,
};
use crate::normal_forms::{NfError, StandardNf, WeakNf};

/// `⋀_ζ ∃x.ζ ∧ ∀x∀y(x=y ∨ Γ) ∧ ⋀_k ⋀_h ∀x∃y(λ_k → (λ_{k+1}(y) ∧ μ_h(y) ∧ Δ_h))`.
///
/// `λ` and `μ` are stored over `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadNf {
    pub zetas: Vec<Formula>,
    pub gamma: ClauseSet,
    pub lambdas: [Formula; 3],
    pub mus: Vec<Formula>,
    pub deltas: Vec<ClauseSet>,
}

impl SpreadNf {
    pub fn multiplicity(&self) -> usize {
        3 * self.mus.len()
    }

    /// The matrix of the `(k, h)` witness conjunct.
    pub fn witness_matrix(&self, k: usize, h: usize, delta: &Formula) -> Formula {
        Formula::implies(
            self.lambdas[k].clone(),
            Formula::And(vec![
                self.lambdas[(k + 1) % 3].swap_vars(),
                self.mus[h].swap_vars(),
                delta.clone(),
            ]),
        )
    }

    pub fn to_formula(&self) -> Formula {
        let mut parts: Vec<Formula> = self.zetas.iter().map(|z| Formula::exists(Var::X, z.clone())).collect();
        parts.push(Formula::forall(
            Var::X,
            Formula::forall(Var::Y, Formula::Or(vec![Formula::Eq(Var::X, Var::Y), self.gamma.to_formula()])),
        ));
        for k in 0..3 {
            for h in 0..self.mus.len() {
                let m = self.witness_matrix(k, h, &self.deltas[h].to_formula());
                parts.push(Formula::forall(Var::X, Formula::exists(Var::Y, m)));
            }
        }
        Formula::And(parts)
    }

    /// Shape conditions, with mutual exclusivity checked over every 1-type.
    pub fn validate(&self, sig: &Signature) -> Result<(), NfError> {
        if self.mus.is_empty() || self.mus.len() != self.deltas.len() {
            return Err(NfError::Shape("one clause set per μ, at least one".into()));
        }
        let unary_x = |f: &Formula| f.is_pure_boolean() && f.free_mask() & 2 == 0;
        if !self.zetas.iter().chain(&self.lambdas).chain(&self.mus).all(unary_x) {
            return Err(NfError::Shape("ζ, λ and μ must be unary pure Boolean formulas in x".into()));
        }
        let exclusive = |fs: &[Formula]| -> Result<bool, LogicError> {
            for t in enumerate_one_types(sig) {
                let mut s = Structure::new(sig.clone(), 1);
                s.set_one_type(0, &t);
                let mut hits = 0;
                for f in fs {
                    if evaluate(&s, f, [Some(0), None])? {
                        hits += 1;
                    }
                }
                if hits > 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        if !exclusive(&self.lambdas)? || !exclusive(&self.mus)? {
            return Err(NfError::Shape("λ or μ are not mutually exclusive".into()));
        }
        Ok(())
    }
}

/// Kings, court and the labelling predicates introduced by [`to_spread`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CourtLabelling {
    /// `c₀, …, c_{S−1}`.
    pub kings: Vec<usize>,
    /// `c₀, …, c_{T−1}`, kings first.
    pub court: Vec<usize>,
    /// `q₁, …, q_t`.
    pub q: Vec<String>,
    /// `q^h₁, …, q^h_s` for each `h`.
    pub qh: Vec<Vec<String>>,
    pub o: Vec<String>,
    pub p: Vec<String>,
    /// The two predicates added to create kings, if any were needed.
    pub king_markers: Vec<String>,
}

impl CourtLabelling {
    /// The `i`th labelling formula over `names`.
    pub fn label(names: &[String], i: usize, v: Var) -> Formula {
        label_unary(names, i, v)
    }
}

#[derive(Clone, Debug)]
pub struct Spread {
    pub nf: SpreadNf,
    pub sig: Signature,
    /// `𝔄‴`.
    pub model: Structure,
    pub court: CourtLabelling,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpreadError {
    #[error("the structure is not a model of the formula")]
    NotAModel,
    #[error("spread form needs the distinguished partial order")]
    NotPartialOrder,
    #[error("the structure has fewer than two elements")]
    TooSmall,
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error(transparent)]
    Duplication(#[from] DuplicationError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("clause closure exceeded {0} clauses")]
    ClauseLimit(usize),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

fn set_label(s: &mut Structure, names: &[String], i: usize, a: usize) -> Result<(), LogicError> {
    let n = names.len();
    for (j, p) in names.iter().enumerate() {
        s.set_unary_by_name(p, a, (i >> (n - 1 - j)) & 1 == 1)?;
    }
    Ok(())
}

fn fresh_list(sig: &mut Signature, stem: &str, n: usize) -> Vec<String> {
    (0..n).map(|_| sig.fresh_unary(stem)).collect()
}

/// Builds `φ*` from a model `A` of `φ`, along with the model `𝔄‴` of `φ*`.
///
/// Court witnesses are the least-indexed candidates.
pub fn to_spread(phi: &StandardNf, sig: &Signature, a: &Structure) -> Result<Spread, SpreadError> {
    phi.validate()?;
    if sig.distinguished() != Distinguished::PartialOrder {
        return Err(SpreadError::NotPartialOrder);
    }
    if a.size() < 2 {
        return Err(SpreadError::TooSmall);
    }
    if a.signature() != sig || !a.check_distinguished().is_empty() || !holds(a, &phi.to_formula())? {
        return Err(SpreadError::NotAModel);
    }
    let m = phi.multiplicity();
    let mut sig1 = sig.clone();
    let mut a1 = a.clone();
    let mut king_markers = Vec::new();
    if kings_of(a).len() < 2 {
        king_markers = fresh_list(&mut sig1, "king", 2);
        a1 = a.expand(&sig1)?;
        a1.set_unary_by_name(&king_markers[0], 0, true)?;
        a1.set_unary_by_name(&king_markers[1], 1, true)?;
    }
    let n1 = a1.size();
    let kings = kings_of(&a1);
    let s_count = kings.len();
    let thetas: Vec<Evaluator> = phi.thetas.iter().map(|t| Evaluator::new(&a1, t)).collect::<Result<_, _>>()?;
    let mut court = kings.clone();
    for &k in &kings {
        for th in &thetas {
            let b = (0..n1)
                .find(|&b| b != k && th.pair(k, b))
                .ok_or_else(|| SpreadError::Internal(format!("king {k} lacks a witness")))?;
            if !court.contains(&b) {
                court.push(b);
            }
        }
    }
    let t_count = court.len();

    let dup = duplicate_nonroyal(&a1, 3 * m)?;
    let big = &dup.structure;

    let mut star = sig1.clone();
    let q = fresh_list(&mut star, "court", bits_for(t_count + 1));
    let qh: Vec<Vec<String>> = (0..m).map(|h| fresh_list(&mut star, &format!("kw{h}_"), bits_for(s_count + 1))).collect();
    let o = fresh_list(&mut star, "o", 3);
    let p = fresh_list(&mut star, "w", m);

    let mut model = big.expand(&star)?;
    for x in 0..model.size() {
        let i = court.iter().position(|&c| c == x).unwrap_or(t_count);
        set_label(&mut model, &q, i, x)?;
    }
    let big_thetas: Vec<Evaluator> = phi.thetas.iter().map(|t| Evaluator::new(big, t)).collect::<Result<_, _>>()?;
    for x in 0..model.size() {
        for h in 0..m {
            let i = if kings.contains(&x) {
                s_count
            } else {
                (0..s_count).find(|&i| big_thetas[h].pair(x, kings[i])).unwrap_or(s_count)
            };
            set_label(&mut model, &qh[h], i, x)?;
        }
    }
    // B_{h,k} is copy number 3h + k
    for (c, members) in dup.copies.iter().enumerate() {
        let (h, k) = (c / 3, c % 3);
        for &x in members {
            model.set_unary_by_name(&o[k], x, true)?;
            model.set_unary_by_name(&p[h], x, true)?;
        }
    }

    let ux = |name: &String| Formula::unary(name, Var::X);
    let lambdas = [
        ux(&o[0]),
        Formula::And(vec![ux(&o[1]), Formula::not(ux(&o[0]))]),
        Formula::And(vec![ux(&o[2]), Formula::not(ux(&o[0])), Formula::not(ux(&o[1]))]),
    ];
    let mus: Vec<Formula> = (0..m)
        .map(|h| {
            let mut c = vec![ux(&p[h])];
            c.extend(p[..h].iter().map(|n| Formula::not(ux(n))));
            Formula::And(c)
        })
        .collect();
    let zetas: Vec<Formula> = (0..t_count).map(|i| label_unary(&q, i, Var::X)).collect();

    let mut universal = vec![phi.eta.clone()];
    for i in 0..t_count {
        for j in i + 1..t_count {
            universal.push(Formula::implies(
                Formula::And(vec![label_unary(&q, i, Var::X), label_unary(&q, j, Var::Y)]),
                big.two_type(court[i], court[j]).to_formula(&sig1),
            ));
        }
    }
    for i in 0..s_count {
        for h in 0..m {
            universal.push(Formula::implies(
                Formula::And(vec![label_unary(&qh[h], i, Var::X), label_unary(&q, i, Var::Y)]),
                phi.thetas[h].clone(),
            ));
        }
    }
    let mut cover: Vec<Formula> = (0..s_count).map(|i| label_unary(&q, i, Var::X)).collect();
    cover.extend(lambdas.iter().cloned());
    universal.push(Formula::Or(cover));

    let deltas: Vec<ClauseSet> = (0..m)
        .map(|h| {
            let no_king = Formula::And((0..s_count).map(|i| Formula::not(label_unary(&qh[h], i, Var::X))).collect());
            cnf(&Formula::implies(no_king, phi.thetas[h].clone()))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| SpreadError::Internal(e.to_string()))?;
    let gamma = cnf(&Formula::And(universal)).map_err(|e| SpreadError::Internal(e.to_string()))?;

    let nf = SpreadNf { zetas, gamma, lambdas, mus, deltas };
    nf.validate(&star)?;
    if !holds(&model, &nf.to_formula())? {
        return Err(SpreadError::Internal("the expanded model does not satisfy the spread form".into()));
    }
    Ok(Spread {
        nf,
        sig: star,
        model,
        court: CourtLabelling { kings, court, q, qh, o: o.to_vec(), p, king_markers },
    })
}

/// In a model of `φ*`: each element's witnesses for different `h` are
/// distinct, and no element witnesses one of its own witnesses.
pub fn spread_witness_check(nf: &SpreadNf, s: &Structure) -> Result<(), String> {
    let n = s.size();
    let lam: Vec<Evaluator> = nf.lambdas.iter().map(|f| Evaluator::new(s, f)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mu: Vec<Evaluator> = nf.mus.iter().map(|f| Evaluator::new(s, f)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let delta: Vec<Evaluator> = nf
        .deltas
        .iter()
        .map(|d| Evaluator::new(s, &d.to_formula()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let level = |x: usize| (0..3).find(|&k| lam[k].pair(x, x));
    let mut witnesses: BTreeMap<usize, Vec<BTreeSet<usize>>> = BTreeMap::new();
    for a in 0..n {
        let Some(k) = level(a) else { continue };
        let mut per_h = Vec::new();
        for h in 0..nf.mus.len() {
            let w: BTreeSet<usize> = (0..n)
                .filter(|&b| level(b) == Some((k + 1) % 3) && mu[h].pair(b, b) && delta[h].pair(a, b))
                .collect();
            if w.is_empty() {
                return Err(format!("element {a} has no witness for conjunct {h}"));
            }
            per_h.push(w);
        }
        for h in 0..per_h.len() {
            for g in 0..h {
                if !per_h[h].is_disjoint(&per_h[g]) {
                    return Err(format!("element {a} shares a witness between conjuncts {g} and {h}"));
                }
            }
        }
        witnesses.insert(a, per_h);
    }
    for (&a, per_h) in &witnesses {
        for &b in per_h.iter().flatten() {
            if witnesses.get(&b).is_some_and(|ws| ws.iter().any(|w| w.contains(&a))) {
                return Err(format!("{a} witnesses its own witness {b}"));
            }
        }
    }
    Ok(())
}

/// The clause closures used by [`eliminate_binaries`] and [`reconstruct_model`].
#[derive(Clone, Debug)]
pub struct Elimination {
    /// `φ'` over `sig`: unary predicates and `<` only.
    pub weak: WeakNf,
    pub sig: Signature,
    /// `(r, r̂)` for each ordinary binary `r`.
    pub hats: Vec<(String, String)>,
    /// `[Γ ∪ Γ⁻¹]*`.
    pub gamma_closed: ClauseSet,
    /// `[Δ_h ∪ Γ ∪ Γ⁻¹]*`.
    pub delta_closed: Vec<ClauseSet>,
}

/// Default ceiling on the size of a clause closure.
pub const CLAUSE_LIMIT: usize = 200_000;

/// `φ*` to `φ'`: resolution closures stripped of cross atoms, diagonal
/// atoms renamed to fresh unary predicates, `x ≠ y` added to the witness conjuncts.
pub fn eliminate_binaries(nf: &SpreadNf, sig: &Signature, limit: usize) -> Result<Elimination, SpreadError> {
    let both = nf.gamma.union(&transpose(&nf.gamma));
    let gamma_closed = resolve_closure_bounded(&both, limit).ok_or(SpreadError::ClauseLimit(limit))?;
    let delta_closed: Vec<ClauseSet> = nf
        .deltas
        .iter()
        .map(|d| resolve_closure_bounded(&d.union(&both), limit).ok_or(SpreadError::ClauseLimit(limit)))
        .collect::<Result<_, _>>()?;

    let mut names = sig.clone();
    let hats: Vec<(String, String)> =
        sig.binary().iter().map(|r| (r.clone(), names.fresh_unary(&format!("{r}_diag")))).collect();
    let out_sig = Signature::new(
        sig.unary().iter().chain(hats.iter().map(|(_, h)| h)).cloned(),
        Vec::<String>::new(),
        sig.distinguished(),
    )?;
    let hat_of: BTreeMap<&str, &str> = hats.iter().map(|(r, h)| (r.as_str(), h.as_str())).collect();
    let replace = |f: &Formula| {
        f.map_atoms(&mut |atom| match atom {
            Formula::Binary(r, u, v) if u == v => Formula::unary(hat_of[r.as_str()], *u),
            other => other.clone(),
        })
    };
    let eta = replace(&strip_binary(&gamma_closed).to_formula());
    let mut thetas = Vec::new();
    for k in 0..3 {
        for (h, closed) in delta_closed.iter().enumerate() {
            thetas.push(replace(&nf.witness_matrix(k, h, &strip_binary(closed).to_formula())));
        }
    }
    let weak = WeakNf { zetas: nf.zetas.iter().map(&replace).collect(), eta, thetas };
    weak.validate()?;
    Ok(Elimination { weak, sig: out_sig, hats, gamma_closed, delta_closed })
}

/// The reduct of `𝔄‴` to the signature of `φ'`, diagonals moved to their hats.
pub fn eliminated_model(sp: &Spread, elim: &Elimination) -> Result<Structure, LogicError> {
    let a = &sp.model;
    let mut m = Structure::new(elim.sig.clone(), a.size());
    for x in 0..a.size() {
        for p in sp.sig.unary() {
            m.set_unary_by_name(p, x, a.unary_by_name(p, x)?)?;
        }
        for (r, hat) in &elim.hats {
            m.set_unary_by_name(hat, x, a.binary_by_name(r, x, x)?)?;
        }
        for y in 0..a.size() {
            m.set_dist(x, y, a.dist(x, y));
        }
    }
    Ok(m)
}

/// A model of `φ*` over the domain of a model `m` of `φ'`.
pub fn reconstruct_model(nf: &SpreadNf, sig: &Signature, elim: &Elimination, m: &Structure) -> Result<Structure, SpreadError> {
    if m.signature() != &elim.sig || !m.check_distinguished().is_empty() || !holds(m, &elim.weak.to_formula())? {
        return Err(SpreadError::NotAModel);
    }
    let n = m.size();
    let mut out = Structure::new(sig.clone(), n);
    for x in 0..n {
        for p in sig.unary() {
            out.set_unary_by_name(p, x, m.unary_by_name(p, x)?)?;
        }
        for (r, hat) in &elim.hats {
            out.set_binary_by_name(r, x, x, m.unary_by_name(hat, x)?)?;
        }
        for y in 0..n {
            out.set_dist(x, y, m.dist(x, y));
        }
    }
    let level: Vec<Option<usize>> = {
        let lam: Vec<Evaluator> = nf.lambdas.iter().map(|f| Evaluator::new(&out, f)).collect::<Result<_, _>>()?;
        (0..n).map(|x| (0..3).find(|&k| lam[k].pair(x, x))).collect()
    };
    let mu: Vec<Vec<bool>> = {
        let ev: Vec<Evaluator> = nf.mus.iter().map(|f| Evaluator::new(&out, f)).collect::<Result<_, _>>()?;
        ev.iter().map(|e| (0..n).map(|x| e.pair(x, x)).collect()).collect()
    };
    let stripped: Vec<ClauseSet> = elim.delta_closed.iter().map(strip_binary).collect();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for a in 0..n {
        let Some(k) = level[a] else { continue };
        for h in 0..nf.mus.len() {
            let b = (0..n)
                .find(|&b| {
                    b != a
                        && level[b] == Some((k + 1) % 3)
                        && mu[h][b]
                        && semi_diagonal_satisfies(sig, &out.two_type(a, b), &stripped[h])
                })
                .ok_or_else(|| SpreadError::Internal(format!("no witness for element {a}, conjunct ({k},{h})")))?;
            if !done.insert((a.min(b), a.max(b))) {
                return Err(SpreadError::Internal(format!("2-type of ({a},{b}) set twice")));
            }
            let tau = complete_type_closed(sig, &out.two_type(a, b), &elim.delta_closed[h])
                .ok_or_else(|| SpreadError::Internal(format!("no completion for witness pair ({a},{b})")))?;
            out.set_cross(a, b, &tau);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if done.contains(&(a, b)) {
                continue;
            }
            let tau = complete_type_closed(sig, &out.two_type(a, b), &elim.gamma_closed)
                .ok_or_else(|| SpreadError::Internal(format!("no completion for pair ({a},{b})")))?;
            out.set_cross(a, b, &tau);
        }
    }
    if !holds(&out, &nf.to_formula())? {
        return Err(SpreadError::Internal("reconstructed structure is not a model".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::to_standard_nf;
    use crate::solver::{find_model, find_model_up_to, sat_at, BoundedOutcome, SearchBudget, SizeOutcome};
    use crate::syntax::parse_formula_infer;

    fn standard(src: &str) -> (StandardNf, Signature) {
        let (f, sig) = parse_formula_infer(src, Distinguished::PartialOrder).unwrap();
        to_standard_nf(&f, &sig).unwrap()
    }

    fn model_of(nf: &StandardNf, sig: &Signature) -> Structure {
        match find_model_up_to(&nf.to_formula(), sig, &SearchBudget::with_max_size(5)).unwrap() {
            BoundedOutcome::Sat(s) => s,
            other => panic!("{other:?}"),
        }
    }

    const FIXTURES: &[&str] = &[
        "forall x exists y (x < y | y < x)",
        "forall x exists y (x != y & r(x, y) & !r(y, x)) & forall x forall y (r(x, y) -> !p(x) | p(y))",
        "forall x (p(x) -> exists y (y < x & !p(y))) & exists x p(x)",
    ];

    #[test]
    fn spread_form_is_satisfied_by_the_expanded_model() {
        for src in FIXTURES {
            let (nf, sig) = standard(src);
            let a = model_of(&nf, &sig);
            let sp = to_spread(&nf, &sig, &a).unwrap();
            assert_eq!(sp.nf.multiplicity(), 3 * nf.multiplicity());
            assert!(holds(&sp.model, &sp.nf.to_formula()).unwrap());
            spread_witness_check(&sp.nf, &sp.model).unwrap();
            assert!(sp.court.kings.len() >= 2);
            assert!(sp.court.kings.len() <= sp.court.court.len());
        }
    }

    #[test]
    fn spread_form_entails_the_original() {
        let (nf, sig) = standard(FIXTURES[0]);
        let sp = to_spread(&nf, &sig, &model_of(&nf, &sig)).unwrap();
        let both = Formula::And(vec![sp.nf.to_formula(), Formula::not(nf.to_formula())]);
        for n in 2..=3 {
            assert!(matches!(find_model(&both, &sp.sig, n, &SearchBudget::default()).unwrap(), SizeOutcome::Unsat));
        }
    }

    #[test]
    fn elimination_round_trip() {
        let (nf, sig) = standard(FIXTURES[1]);
        let sp = to_spread(&nf, &sig, &model_of(&nf, &sig)).unwrap();
        let el = eliminate_binaries(&sp.nf, &sp.sig, CLAUSE_LIMIT).unwrap();
        assert!(el.sig.binary().is_empty());
        assert_eq!(el.weak.multiplicity(), sp.nf.multiplicity());
        // the reduct-with-hats of 𝔄‴ is a model of φ'
        let mut m = Structure::new(el.sig.clone(), sp.model.size());
        for x in 0..m.size() {
            for p in sp.sig.unary() {
                m.set_unary_by_name(p, x, sp.model.unary_by_name(p, x).unwrap()).unwrap();
            }
            for (r, hat) in &el.hats {
                m.set_unary_by_name(hat, x, sp.model.binary_by_name(r, x, x).unwrap()).unwrap();
            }
            for y in 0..m.size() {
                m.set_dist(x, y, sp.model.dist(x, y));
            }
        }
        assert!(holds(&m, &el.weak.to_formula()).unwrap());
        let back = reconstruct_model(&sp.nf, &sp.sig, &el, &m).unwrap();
        assert_eq!(back.size(), m.size());
        assert!(holds(&back, &nf.to_formula()).unwrap());
    }

    #[test]
    fn resolvent_reaches_the_universal_part() {
        let sig = Signature::new(["p", "q", "l", "u"], ["r"], Distinguished::PartialOrder).unwrap();
        let f = |s: &str| crate::syntax::parse_formula(s, &sig).unwrap();
        let nf = SpreadNf {
            zetas: vec![],
            gamma: cnf(&f("(r(x, y) | p(x)) & (!r(x, y) | q(y))")).unwrap(),
            lambdas: [f("l(x)"), f("!l(x) & u(x)"), f("!l(x) & !u(x)")],
            mus: vec![f("true")],
            deltas: vec![ClauseSet::new()],
        };
        nf.validate(&sig).unwrap();
        let el = eliminate_binaries(&nf, &sig, CLAUSE_LIMIT).unwrap();
        let target = cnf(&f("p(x) | q(y)")).unwrap();
        assert!(strip_binary(&el.gamma_closed).contains(target.iter().next().unwrap()));
        for n in 2..=4 {
            let a = sat_at(&nf.to_formula(), &sig, n, &SearchBudget::default()).unwrap();
            let b = sat_at(&el.weak.to_formula(), &el.sig, n, &SearchBudget::default()).unwrap();
            assert_eq!(a, b, "size {n}");
            if let SizeOutcome::Sat(m) = find_model(&el.weak.to_formula(), &el.sig, n, &SearchBudget::default()).unwrap() {
                let back = reconstruct_model(&nf, &sig, &el, &m).unwrap();
                assert!(holds(&back, &nf.to_formula()).unwrap());
            }
        }
    }
}
