//! Reducing the size of blocks: sub-blocks and the structure that replaces
//! each sub-block by one object (inside a unit block) or two incomparable
//! objects.

use std::collections::BTreeSet;

use crate::factorization::{fc_holds, is_thin, FactorError, Factorization, TypedPartialOrder};
use crate::normal_forms::{Basic, BasicSet};
use crate::relation::Relation;

/// `⟨B⁻, B, B⁺⟩` for an element: blocks with a member below it, its own
/// block, blocks with a member above it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubType {
    pub below: BTreeSet<usize>,
    pub block: usize,
    pub above: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBlock {
    pub members: Vec<usize>,
    pub sub_type: SubType,
}

pub fn sub_type(a: &TypedPartialOrder, f: &Factorization, x: usize) -> SubType {
    let n = a.size();
    SubType {
        below: (0..n).filter(|&y| a.lt(y, x)).map(|y| f.block_of(y)).collect(),
        block: f.block_of(x),
        above: (0..n).filter(|&y| a.lt(x, y)).map(|y| f.block_of(y)).collect(),
    }
}

/// Sub-blocks in order of least member.
pub fn sub_blocks(a: &TypedPartialOrder, f: &Factorization) -> Vec<SubBlock> {
    let mut out: Vec<SubBlock> = Vec::new();
    for x in 0..a.size() {
        let st = sub_type(a, f, x);
        match out.iter_mut().find(|s| s.sub_type == st) {
            Some(s) => s.members.push(x),
            None => out.push(SubBlock { members: vec![x], sub_type: st }),
        }
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum HatError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("construction check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// `Â = (X̂, ≺, t̂p)` with its factorization `𝔹̂`.
#[derive(Clone, Debug)]
pub struct Hat {
    pub subs: Vec<SubBlock>,
    /// `objects[o] = (sub-block, side)`; unit-block sub-blocks have side 0 only.
    pub objects: Vec<(usize, u8)>,
    pub r_exists: Relation,
    pub r_forall: Relation,
    pub structure: TypedPartialOrder,
    /// Block `i` of the input corresponds to block `block_map[i]` here.
    pub factorization: Factorization,
    pub block_map: Vec<usize>,
}

impl Hat {
    /// Objects of `ŝ`.
    pub fn objects_of(&self, s: usize) -> Vec<usize> {
        (0..self.objects.len()).filter(|&o| self.objects[o].0 == s).collect()
    }

    /// `ŝ(i)`; both sides coincide for unit blocks.
    pub fn object(&self, s: usize, side: u8) -> usize {
        let objs = self.objects_of(s);
        if objs.len() == 1 {
            objs[0]
        } else {
            objs[side as usize]
        }
    }

    pub fn prec(&self) -> &Relation {
        self.structure.less()
    }
}

fn precondition(a: &TypedPartialOrder, f: &Factorization, psi: &BasicSet) -> Result<(), HatError> {
    f.validate(a)?;
    if !f.is_unitary(a) {
        return Err(HatError::Precondition("the factorization is not unitary".into()));
    }
    if !is_thin(a, f)? {
        return Err(HatError::Precondition("the order is not thin over the factorization".into()));
    }
    for p in &psi.formulas {
        if !a.satisfies(&p.to_formula(&psi.sig))? {
            return Err(HatError::Precondition(format!("{} fails in the input", p.kind())));
        }
    }
    for p in psi.fc_subset() {
        if !fc_holds(a, f, p)? {
            return Err(HatError::Precondition(format!("the factorization does not control {}", p.kind())));
        }
    }
    Ok(())
}

/// Builds `Â` without checking anything beyond what construction needs.
pub fn build_hat(a: &TypedPartialOrder, f: &Factorization) -> Result<Hat, HatError> {
    let subs = sub_blocks(a, f);
    let mut objects = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        objects.push((i, 0));
        if f.block(s.sub_type.block).len() > 1 {
            objects.push((i, 1));
        }
    }
    let m = objects.len();
    let obj = |s: usize, side: u8| {
        objects
            .iter()
            .position(|&(t, d)| t == s && d == side)
            .or_else(|| objects.iter().position(|&(t, _)| t == s))
            .unwrap()
    };
    let mut r_exists = Relation::empty(m);
    let mut r_forall = Relation::empty(m);
    for (i, s) in subs.iter().enumerate() {
        for (j, t) in subs.iter().enumerate() {
            if i == j {
                continue;
            }
            if s.members.iter().any(|&x| t.members.iter().any(|&y| a.lt(x, y))) {
                for side in 0..2 {
                    r_exists.set(obj(i, side), obj(j, side), true);
                }
            }
            if f.below(s.sub_type.block, t.sub_type.block) {
                for u in 0..2 {
                    for v in 0..2 {
                        r_forall.set(obj(i, u), obj(j, v), true);
                    }
                }
            }
        }
    }
    let prec = r_exists.union(&r_forall).closure();
    if !prec.is_irreflexive() {
        return Err(HatError::Check("≺ has a cycle".into()));
    }
    let types: Vec<_> = objects.iter().map(|&(s, _)| a.tp(subs[s].members[0]).clone()).collect();
    let structure = TypedPartialOrder::from_parts(a.signature(), &prec, &types)?;
    let hat_blocks: Vec<Vec<usize>> = (0..f.len())
        .map(|b| (0..m).filter(|&o| subs[objects[o].0].sub_type.block == b).collect())
        .collect();
    let firsts: Vec<usize> = hat_blocks.iter().map(|v| v[0]).collect();
    let factorization = Factorization::new(&structure, hat_blocks, f.order().pairs())
        .map_err(|e| HatError::Check(format!("𝔹̂ is not a factorization: {e}")))?;
    let block_map = firsts.iter().map(|&o| factorization.block_of(o)).collect();
    Ok(Hat { subs, objects, r_exists, r_forall, structure, factorization, block_map })
}

/// Sub-type monotonicity along every generating edge.
pub fn check_monotonicity(h: &Hat) -> Result<(), String> {
    let edges = h.r_exists.union(&h.r_forall);
    for (c, d) in edges.pairs() {
        let (s, t) = (&h.subs[h.objects[c].0].sub_type, &h.subs[h.objects[d].0].sub_type);
        let i = s.below.is_subset(&t.below);
        let ii = s.above.is_superset(&t.above);
        let mut s_up = s.above.clone();
        s_up.insert(s.block);
        let mut t_up = t.above.clone();
        t_up.insert(t.block);
        let iii = s_up.is_superset(&t_up);
        if !(i && ii && iii) {
            return Err(format!("inclusions fail on edge {c} -> {d}"));
        }
        if s.below == t.below && s.above == t.above && s_up == t_up {
            return Err(format!("no inclusion is strict on edge {c} -> {d}"));
        }
    }
    Ok(())
}

/// `B ↦ B̂` is an isomorphism of typed partial orders.
pub fn check_isomorphism(a: &TypedPartialOrder, f: &Factorization, h: &Hat) -> Result<(), String> {
    let g = &h.factorization;
    for i in 0..f.len() {
        if f.tp(a, i) != g.tp(&h.structure, h.block_map[i]) {
            return Err(format!("block {i} changes type"));
        }
        for j in 0..f.len() {
            if f.below(i, j) != g.below(h.block_map[i], h.block_map[j]) {
                return Err(format!("order between blocks {i} and {j} changes"));
            }
        }
    }
    Ok(())
}

/// If `c ≺ d` with `c ∈ ŝ ⊆ Â`, `d ∈ t̂`, `s ⊆ A`, `t ⊆ B`, then every member of `s`
/// lies below some member of `B` and every member of `t` above some member of `A`.
pub fn check_reach(a: &TypedPartialOrder, f: &Factorization, h: &Hat) -> Result<(), String> {
    for (c, d) in h.prec().pairs() {
        let (s, t) = (&h.subs[h.objects[c].0], &h.subs[h.objects[d].0]);
        let (ba, bb) = (f.block(s.sub_type.block), f.block(t.sub_type.block));
        if !s.members.iter().all(|&x| bb.iter().any(|&y| a.lt(x, y))) {
            return Err(format!("{c} ≺ {d} but some member of the first sub-block has nothing above it"));
        }
        if !t.members.iter().all(|&y| ba.iter().any(|&x| a.lt(x, y))) {
            return Err(format!("{c} ≺ {d} but some member of the second sub-block has nothing below it"));
        }
    }
    Ok(())
}

/// For `a ∼ b`, each object of `ŝ` is incomparable to the opposite-side
/// object of `t̂`. Returns the violating `(a, b)` pairs.
pub fn incomparable_witness_check(a: &TypedPartialOrder, h: &Hat) -> Vec<(usize, usize)> {
    let sub_of = |x: usize| h.subs.iter().position(|s| s.members.contains(&x)).unwrap();
    let mut out = Vec::new();
    for x in 0..a.size() {
        for y in 0..a.size() {
            if !a.incomparable(x, y) {
                continue;
            }
            let (s, t) = (sub_of(x), sub_of(y));
            let ok = (0..2u8).all(|side| {
                let c = h.object(s, side);
                let d = h.object(t, 1 - side);
                h.structure.incomparable(c, d)
            });
            if !ok {
                out.push((x, y));
            }
        }
    }
    out
}

/// Sub-type count bound `|𝐁|^{2N+1}` for `N` realized 1-types.
pub fn sub_block_bound(a: &TypedPartialOrder, f: &Factorization) -> u128 {
    let n = a.realized().len() as u32;
    (f.len() as u128).saturating_pow(2 * n + 1)
}

/// The hat construction with every property the correctness argument relies
/// on checked along the way.
pub fn shrink_blocks(a: &TypedPartialOrder, f: &Factorization, psi: &BasicSet) -> Result<Hat, HatError> {
    precondition(a, f, psi)?;
    let h = build_hat(a, f)?;
    check_monotonicity(&h).map_err(HatError::Check)?;
    check_isomorphism(a, f, &h).map_err(HatError::Check)?;
    check_reach(a, f, &h).map_err(HatError::Check)?;
    let bad = incomparable_witness_check(a, &h);
    if let Some((x, y)) = bad.first() {
        return Err(HatError::Check(format!("incomparable pair {x}, {y} lost its witness")));
    }
    let n = h.structure.size();
    if n > 2 * h.subs.len() || n < 2 {
        return Err(HatError::Check(format!("{n} objects for {} sub-blocks", h.subs.len())));
    }
    if (h.subs.len() as u128) > sub_block_bound(a, f) {
        return Err(HatError::Check("too many sub-blocks".into()));
    }
    for p in &psi.formulas {
        if !h.structure.satisfies(&p.to_formula(&psi.sig))? {
            return Err(HatError::Check(format!("{} fails in the shrunken structure", p.kind())));
        }
        if let Basic::B3(..) | Basic::B5b(..) = p {
            if !fc_holds(&h.structure, &h.factorization, p)? {
                return Err(HatError::Check(format!("𝔹̂ does not control {}", p.kind())));
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::fixtures::tpo;
    use crate::logic::{Formula, Var};

    #[test]
    fn sub_blocks_of_simple_orders() {
        let chain = tpo(&["p"], &[1, 1, 0], &[(0, 1)]);
        let f = Factorization::new(&chain, vec![vec![0], vec![1], vec![2]], [(0, 1)]).unwrap();
        assert_eq!(sub_blocks(&chain, &f).len(), 3);
        let anti = tpo(&["p"], &[1, 1, 1, 0], &[]);
        let g = Factorization::trivial(&anti);
        assert_eq!(sub_blocks(&anti, &g).len(), 2);
        // one q-element below half of a p-antichain
        let straddle = tpo(&["p", "q"], &[1, 1, 1, 1, 2], &[(4, 0), (4, 1)]);
        let h = Factorization::trivial(&straddle);
        assert_eq!(sub_blocks(&straddle, &h).len(), 3);
    }

    #[test]
    fn antichain_shrinks_to_two() {
        let a = tpo(&["p"], &[1, 1, 1, 1, 1], &[]);
        let f = Factorization::trivial(&a);
        let alpha = a.tp(0).clone();
        let psi = BasicSet {
            sig: a.signature().clone(),
            formulas: vec![Basic::B8(alpha, Formula::unary("p", Var::X)), Basic::B9(Formula::unary("p", Var::X))],
        };
        let h = shrink_blocks(&a, &f, &psi).unwrap();
        assert_eq!(h.structure.size(), 2);
        assert!(h.structure.incomparable(0, 1));
    }

    #[test]
    fn unit_blocks_are_copied() {
        let a = tpo(&["p"], &[1, 0, 1], &[(0, 1), (1, 2), (0, 2)]);
        let f = Factorization::new(&a, vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2)]).unwrap();
        let psi = BasicSet { sig: a.signature().clone(), formulas: vec![] };
        let h = shrink_blocks(&a, &f, &psi).unwrap();
        assert_eq!(h.structure.size(), 3);
        assert_eq!(h.structure.less().count(), 3);
    }
}
