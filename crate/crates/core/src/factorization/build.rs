//! Constructing factorizations: one per factor-controllable formula, common
//! refinements, and the unit-block refinement.

use super::{FactorError, Factorization, TypedPartialOrder};
use crate::logic::OneType;
use crate::normal_forms::{Basic, BasicSet};

fn precondition(psi: &Basic, a: &TypedPartialOrder, x: usize, y: usize) -> FactorError {
    FactorError::Precondition { formula: psi.to_formula(a.signature()).to_string(), a: x, b: y }
}

/// A factorization in which every α-block lies below every β-block, given
/// that every α-element lies below every β-element.
pub fn factor_for_b3(a: &TypedPartialOrder, alpha: &OneType, beta: &OneType) -> Result<Factorization, FactorError> {
    let (xs, ys) = (a.of_type(alpha), a.of_type(beta));
    for &x in &xs {
        for &y in &ys {
            if !a.lt(x, y) {
                return Err(precondition(&Basic::B3(alpha.clone(), beta.clone()), a, x, y));
            }
        }
    }
    let blocks: Vec<Vec<usize>> = a.realized().iter().map(|t| a.of_type(t)).collect();
    let find = |t: &OneType| blocks.iter().position(|b| a.tp(b[0]) == t);
    let edges: Vec<(usize, usize)> = match (find(alpha), find(beta)) {
        (Some(i), Some(j)) => vec![(i, j)],
        _ => Vec::new(),
    };
    Factorization::new(a, blocks, edges)
}

/// A factorization in which the (α∨β)-blocks form a chain, given that every
/// α-element is comparable with every β-element.
pub fn factor_for_b5b(a: &TypedPartialOrder, alpha: &OneType, beta: &OneType) -> Result<Factorization, FactorError> {
    let (xs, ys) = (a.of_type(alpha), a.of_type(beta));
    for &x in &xs {
        for &y in &ys {
            if !a.lt(x, y) && !a.lt(y, x) {
                return Err(precondition(&Basic::B5b(alpha.clone(), beta.clone()), a, x, y));
            }
        }
    }
    if xs.is_empty() || ys.is_empty() {
        return Ok(Factorization::trivial(a));
    }
    // group elements of one side by which elements of the other side lie above them
    let classes = |side: &[usize], other: &[usize]| {
        let mut out: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        for &x in side {
            let key: Vec<bool> = other.iter().map(|&y| a.lt(x, y)).collect();
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(x),
                None => out.push((key, vec![x])),
            }
        }
        out.into_iter().map(|(_, v)| v).collect::<Vec<_>>()
    };
    let mut blocks = classes(&xs, &ys);
    blocks.extend(classes(&ys, &xs));
    let chain = blocks.len();
    for t in a.realized() {
        if t != *alpha && t != *beta {
            blocks.push(a.of_type(&t));
        }
    }
    let mut edges = Vec::new();
    for i in 0..chain {
        for j in 0..chain {
            if i != j && blocks[i].iter().any(|&c| blocks[j].iter().any(|&d| a.lt(c, d))) {
                edges.push((i, j));
            }
        }
    }
    Factorization::new(a, blocks, edges)
}

/// `B ⊨ ψ` for a factor-controllable `ψ`.
pub fn fc_holds(a: &TypedPartialOrder, f: &Factorization, psi: &Basic) -> Result<bool, FactorError> {
    match psi {
        Basic::B3(alpha, beta) => {
            let (xs, ys) = (f.blocks_of_type(a, alpha), f.blocks_of_type(a, beta));
            Ok(xs.iter().all(|&i| ys.iter().all(|&j| f.below(i, j))))
        }
        Basic::B5b(alpha, beta) => {
            let mut v = f.blocks_of_type(a, alpha);
            v.extend(f.blocks_of_type(a, beta));
            Ok(f.order().is_chain_on(&v))
        }
        other => Err(FactorError::NotFactorControllable(other.to_formula(a.signature()).to_string())),
    }
}

/// Non-empty pairwise intersections, ordered by the closure of both block orders.
pub fn common_refinement(
    a: &TypedPartialOrder,
    f1: &Factorization,
    f2: &Factorization,
) -> Result<Factorization, FactorError> {
    if f1.block_of.len() != a.size() || f2.block_of.len() != a.size() {
        return Err(FactorError::CarrierMismatch);
    }
    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..a.size() {
        let key = (f1.block_of(x), f2.block_of(x));
        match keys.iter().position(|k| *k == key) {
            Some(i) => blocks[i].push(x),
            None => {
                keys.push(key);
                blocks.push(vec![x]);
            }
        }
    }
    let mut edges = Vec::new();
    for (i, &(a1, a2)) in keys.iter().enumerate() {
        for (j, &(b1, b2)) in keys.iter().enumerate() {
            if f1.below(a1, b1) || f2.below(a2, b2) {
                edges.push((i, j));
            }
        }
    }
    Factorization::new(a, blocks, edges)
}

/// Whether `fine` refines `coarse`: every fine block sits inside a coarse
/// block and the coarse order carries over.
pub fn is_refinement(fine: &Factorization, coarse: &Factorization) -> bool {
    if fine.block_of.len() != coarse.block_of.len() {
        return false;
    }
    let parent: Vec<usize> = fine.blocks().iter().map(|b| coarse.block_of(b[0])).collect();
    if fine
        .blocks()
        .iter()
        .zip(&parent)
        .any(|(b, &p)| b.iter().any(|&x| coarse.block_of(x) != p))
    {
        return false;
    }
    (0..fine.len()).all(|i| (0..fine.len()).all(|j| !coarse.below(parent[i], parent[j]) || fine.below(i, j)))
}

/// Splits every block that `<` orders linearly into unit blocks.
pub fn unit_refinement(a: &TypedPartialOrder, f: &Factorization) -> Result<Factorization, FactorError> {
    let mut blocks = Vec::new();
    let mut origin = Vec::new();
    for (i, b) in f.blocks().iter().enumerate() {
        if b.len() > 1 && a.less().is_chain_on(b) {
            for &x in b {
                blocks.push(vec![x]);
                origin.push(i);
            }
        } else {
            blocks.push(b.clone());
            origin.push(i);
        }
    }
    let mut edges = Vec::new();
    for i in 0..blocks.len() {
        for j in 0..blocks.len() {
            let inherited = f.below(origin[i], origin[j]);
            let split = origin[i] == origin[j] && i != j && a.lt(blocks[i][0], blocks[j][0]);
            if inherited || split {
                edges.push((i, j));
            }
        }
    }
    Factorization::new(a, blocks, edges)
}

/// A unitary factorization satisfying every factor-controllable member of `psi`.
pub fn factorize_for(a: &TypedPartialOrder, psi: &BasicSet) -> Result<Factorization, FactorError> {
    if a.signature().unary() != psi.sig.unary() {
        return Err(FactorError::NotTypedOrder);
    }
    for b in &psi.formulas {
        let f = b.to_formula(&psi.sig);
        if !a.satisfies(&f)? {
            return Err(FactorError::NotAModel(f.to_string()));
        }
    }
    let mut acc = Factorization::trivial(a);
    for b in psi.fc_subset() {
        let g = match b {
            Basic::B3(alpha, beta) => factor_for_b3(a, alpha, beta)?,
            Basic::B5b(alpha, beta) => factor_for_b5b(a, alpha, beta)?,
            _ => unreachable!("fc_subset yields only B3 and B5b"),
        };
        acc = common_refinement(a, &acc, &g)?;
    }
    unit_refinement(a, &acc)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::tpo;
    use super::*;

    #[test]
    fn b3_factorization() {
        // 0:p below 1:¬p
        let a = tpo(&["p"], &[1, 0], &[(0, 1)]);
        let (alpha, beta) = (a.tp(0).clone(), a.tp(1).clone());
        let f = factor_for_b3(&a, &alpha, &beta).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.order().count(), 1);
        assert!(fc_holds(&a, &f, &Basic::B3(alpha.clone(), beta.clone())).unwrap());
        let none = tpo(&["p"], &[0, 0], &[]);
        let g = factor_for_b3(&none, &alpha, &beta).unwrap();
        assert_eq!(g, Factorization::trivial(&none));
        let bad = tpo(&["p"], &[1, 0], &[]);
        assert!(matches!(factor_for_b3(&bad, &alpha, &beta), Err(FactorError::Precondition { .. })));
    }

    #[test]
    fn b5b_interleaved_chain() {
        // chain 0 < 1 < 2 < 3 alternating p, ¬p; plus an unrelated q-element
        let a = tpo(&["p", "q"], &[1, 0, 1, 0, 2], &[(0, 1), (1, 2), (2, 3)]);
        let (alpha, beta) = (a.tp(0).clone(), a.tp(1).clone());
        let f = factor_for_b5b(&a, &alpha, &beta).unwrap();
        assert_eq!(f.len(), 5);
        assert!(fc_holds(&a, &f, &Basic::B5b(alpha, beta)).unwrap());
        assert_eq!(f.block(f.block_of(4)), &[4]);
    }

    #[test]
    fn refinement_laws() {
        let a = tpo(&["p"], &[1, 0, 1, 0], &[(0, 1), (1, 2), (2, 3)]);
        let (alpha, beta) = (a.tp(0).clone(), a.tp(1).clone());
        let f = factor_for_b5b(&a, &alpha, &beta).unwrap();
        let t = Factorization::trivial(&a);
        assert!(is_refinement(&f, &f));
        assert_eq!(common_refinement(&a, &f, &f).unwrap(), f);
        assert_eq!(common_refinement(&a, &f, &t).unwrap(), f);
        assert!(is_refinement(&f, &t));
        assert!(!is_refinement(&t, &f));
    }

    #[test]
    fn unit_refinement_splits_chains() {
        let a = tpo(&["p"], &[1, 1, 1, 0, 0], &[(0, 1), (1, 2)]);
        let u = unit_refinement(&a, &Factorization::trivial(&a)).unwrap();
        assert_eq!(u.len(), 4);
        assert!(u.is_unitary(&a));
    }
}
