//! The orders a factorization induces on elements, and thinning.

use super::{FactorError, Factorization, TypedPartialOrder};
use crate::relation::Relation;

/// Element orders read off a factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOrders {
    /// `a ≪ b`: the block of `a` precedes the block of `b`.
    pub inter: Relation,
    /// `a <₀ b`: `a < b` inside one block.
    pub intra: Relation,
    /// `a <× b`: `a < b` with both extremal.
    pub extremal: Relation,
    /// Transitive closure of the three.
    pub lessdot: Relation,
}

pub fn derived_orders(a: &TypedPartialOrder, f: &Factorization) -> Result<DerivedOrders, FactorError> {
    f.validate(a)?;
    let n = a.size();
    let inter = f.inter_block();
    let intra = Relation::from_fn(n, |x, y| a.lt(x, y) && f.block_of(x) == f.block_of(y));
    let ext: Vec<bool> = (0..n).map(|x| a.is_extremal(x)).collect();
    let extremal = Relation::from_fn(n, |x, y| a.lt(x, y) && ext[x] && ext[y]);
    let lessdot = inter.union(&intra).union(&extremal).closure();
    Ok(DerivedOrders { inter, intra, extremal, lessdot })
}

/// The same elements and types ordered by `⋖`.
pub fn thin(a: &TypedPartialOrder, f: &Factorization) -> Result<TypedPartialOrder, FactorError> {
    let d = derived_orders(a, f)?;
    a.with_order(&d.lessdot)
}

/// Whether `<` coincides with `⋖`.
pub fn is_thin(a: &TypedPartialOrder, f: &Factorization) -> Result<bool, FactorError> {
    Ok(derived_orders(a, f)?.lessdot == *a.less())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::tpo;
    use super::*;

    #[test]
    fn thinning_drops_unforced_edges() {
        // p-chain 0 < 1 < 2, q-element 3 with 1 < 3; 1 is not extremal so 1 < 3 is dropped
        let a = tpo(&["p", "q"], &[1, 1, 1, 2], &[(0, 1), (1, 2), (1, 3)]);
        let f = Factorization::trivial(&a);
        assert!(!is_thin(&a, &f).unwrap());
        let t = thin(&a, &f).unwrap();
        assert!(!t.lt(1, 3));
        assert!(t.lt(0, 3), "0 is minimal and 3 is extremal");
        assert!(t.lt(0, 2) && t.lt(1, 2));
        assert!(is_thin(&t, &f).unwrap());
        f.validate(&t).unwrap();
        let anti = tpo(&["p"], &[1, 0, 1], &[]);
        assert!(is_thin(&anti, &Factorization::trivial(&anti)).unwrap());
    }
}
