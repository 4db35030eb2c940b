//! Typed partial orders and their factorizations into type-homogeneous blocks.

mod build;
mod thin;

pub use build::{
    common_refinement, factor_for_b3, factor_for_b5b, factorize_for, fc_holds, is_refinement, unit_refinement,
};
pub use thin::{derived_orders, is_thin, thin, DerivedOrders};

use std::fmt;

use crate::logic::{holds, Distinguished, Formula, LogicError, OneType, Signature, Structure};
use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("a typed partial order needs a partial order over unary predicates only")]
    NotTypedOrder,
    #[error("`<` is not a strict partial order")]
    NotPartialOrder,
    #[error("a typed partial order needs at least two elements")]
    TooSmall,
    #[error("blocks do not partition the carrier")]
    NotPartition,
    #[error("(F1) fails: block {0} mixes 1-types")]
    Mixed(usize),
    #[error("(F2) fails: blocks {0} and {1} have the same 1-type but are unordered")]
    Unordered(usize, usize),
    #[error("(F3) fails: block {0} precedes block {1} but {2} < {3} does not hold")]
    Unsupported(usize, usize, usize, usize),
    #[error("the block order is cyclic")]
    Cyclic,
    #[error("precondition fails for {formula} at elements {a} and {b}")]
    Precondition { formula: String, a: usize, b: usize },
    #[error("{0} is not factor-controllable")]
    NotFactorControllable(String),
    #[error("factorizations are over different carriers")]
    CarrierMismatch,
    #[error("the structure does not satisfy {0}")]
    NotAModel(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// `(X, <, tp)`: a structure over unary predicates and a strict partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedPartialOrder {
    structure: Structure,
    less: Relation,
    types: Vec<OneType>,
}

impl TypedPartialOrder {
    pub fn new(structure: Structure) -> Result<Self, FactorError> {
        let sig = structure.signature();
        if sig.distinguished() != Distinguished::PartialOrder || !sig.binary().is_empty() {
            return Err(FactorError::NotTypedOrder);
        }
        if structure.size() < 2 {
            return Err(FactorError::TooSmall);
        }
        let n = structure.size();
        let less = Relation::from_fn(n, |a, b| structure.dist(a, b));
        if !less.is_strict_partial_order() {
            return Err(FactorError::NotPartialOrder);
        }
        let types = (0..n).map(|a| structure.one_type(a)).collect();
        Ok(TypedPartialOrder { structure, less, types })
    }

    /// Builds the structure from an order and one type per element.
    pub fn from_parts(sig: &Signature, less: &Relation, types: &[OneType]) -> Result<Self, FactorError> {
        let mut s = Structure::new(sig.clone(), types.len());
        for (a, t) in types.iter().enumerate() {
            s.set_one_type(a, t);
        }
        for (a, b) in less.pairs() {
            s.set_dist(a, b, true);
        }
        TypedPartialOrder::new(s)
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn signature(&self) -> &Signature {
        self.structure.signature()
    }

    pub fn size(&self) -> usize {
        self.types.len()
    }

    pub fn less(&self) -> &Relation {
        &self.less
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less.get(a, b)
    }

    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        a != b && !self.lt(a, b) && !self.lt(b, a)
    }

    pub fn tp(&self, a: usize) -> &OneType {
        &self.types[a]
    }

    pub fn types(&self) -> &[OneType] {
        &self.types
    }

    /// Elements of 1-type `t`.
    pub fn of_type(&self, t: &OneType) -> Vec<usize> {
        (0..self.size()).filter(|&a| self.types[a] == *t).collect()
    }

    /// 1-types realized, in order of first occurrence.
    pub fn realized(&self) -> Vec<OneType> {
        let mut out: Vec<OneType> = Vec::new();
        for t in &self.types {
            if !out.contains(t) {
                out.push(t.clone());
            }
        }
        out
    }

    /// No element of the same 1-type lies above `a`.
    pub fn is_maximal(&self, a: usize) -> bool {
        !(0..self.size()).any(|b| self.types[b] == self.types[a] && self.lt(a, b))
    }

    pub fn is_minimal(&self, a: usize) -> bool {
        !(0..self.size()).any(|b| self.types[b] == self.types[a] && self.lt(b, a))
    }

    pub fn is_extremal(&self, a: usize) -> bool {
        self.is_maximal(a) || self.is_minimal(a)
    }

    /// Same types, different order.
    pub fn with_order(&self, less: &Relation) -> Result<Self, FactorError> {
        TypedPartialOrder::from_parts(self.signature(), less, &self.types)
    }

    pub fn satisfies(&self, f: &Formula) -> Result<bool, FactorError> {
        Ok(holds(&self.structure, f)?)
    }
}

/// A partition of the carrier into blocks with a strict partial order on
/// blocks. Blocks are sorted by least element.
#[derive(Clone, PartialEq, Eq)]
pub struct Factorization {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    order: Relation,
}

impl Factorization {
    /// Validates (F1)–(F3) and takes the transitive closure of `edges`.
    pub fn new(
        a: &TypedPartialOrder,
        blocks: Vec<Vec<usize>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, FactorError> {
        let mut indexed: Vec<(usize, Vec<usize>)> = blocks.into_iter().enumerate().collect();
        for (_, b) in indexed.iter_mut() {
            b.sort_unstable();
        }
        if indexed.iter().any(|(_, b)| b.is_empty()) {
            return Err(FactorError::NotPartition);
        }
        indexed.sort_by_key(|(_, b)| b[0]);
        let mut rank = vec![0; indexed.len()];
        for (new, (old, _)) in indexed.iter().enumerate() {
            rank[*old] = new;
        }
        let blocks: Vec<Vec<usize>> = indexed.into_iter().map(|(_, b)| b).collect();
        let mut block_of = vec![usize::MAX; a.size()];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= a.size() || block_of[x] != usize::MAX {
                    return Err(FactorError::NotPartition);
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(FactorError::NotPartition);
        }
        let order = Relation::from_pairs(blocks.len(), edges.into_iter().map(|(i, j)| (rank[i], rank[j]))).closure();
        let f = Factorization { blocks, block_of, order };
        f.validate(a)?;
        Ok(f)
    }

    pub fn validate(&self, a: &TypedPartialOrder) -> Result<(), FactorError> {
        if self.block_of.len() != a.size() {
            return Err(FactorError::CarrierMismatch);
        }
        if !self.order.is_irreflexive() {
            return Err(FactorError::Cyclic);
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if b.iter().any(|&x| a.tp(x) != a.tp(b[0])) {
                return Err(FactorError::Mixed(i));
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j
                    && self.tp(a, i) == self.tp(a, j)
                    && !self.order.get(i, j)
                    && !self.order.get(j, i)
                {
                    return Err(FactorError::Unordered(i, j));
                }
                if self.order.get(i, j) {
                    for &x in &self.blocks[i] {
                        for &y in &self.blocks[j] {
                            if !a.lt(x, y) {
                                return Err(FactorError::Unsupported(i, j, x, y));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The non-empty 1-type classes with the empty block order.
    pub fn trivial(a: &TypedPartialOrder) -> Self {
        let blocks: Vec<Vec<usize>> = a.realized().iter().map(|t| a.of_type(t)).collect();
        Factorization::new(a, blocks, []).expect("the trivial factorization is always valid")
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// The block order (transitively closed).
    pub fn order(&self) -> &Relation {
        &self.order
    }

    pub fn below(&self, i: usize, j: usize) -> bool {
        self.order.get(i, j)
    }

    /// `i ≈ j`: distinct and unordered.
    pub fn unordered(&self, i: usize, j: usize) -> bool {
        i != j && !self.below(i, j) && !self.below(j, i)
    }

    pub fn covers(&self) -> Relation {
        self.order.covers()
    }

    pub fn tp<'a>(&self, a: &'a TypedPartialOrder, i: usize) -> &'a OneType {
        a.tp(self.blocks[i][0])
    }

    /// Blocks of 1-type `t`, from the bottom of their chain up.
    pub fn blocks_of_type(&self, a: &TypedPartialOrder, t: &OneType) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).filter(|&i| self.tp(a, i) == t).collect();
        v.sort_by_key(|&i| (0..self.len()).filter(|&j| self.below(j, i)).count());
        v
    }

    pub fn is_maximal_block(&self, a: &TypedPartialOrder, i: usize) -> bool {
        !(0..self.len()).any(|j| self.below(i, j) && self.tp(a, j) == self.tp(a, i))
    }

    pub fn is_minimal_block(&self, a: &TypedPartialOrder, i: usize) -> bool {
        !(0..self.len()).any(|j| self.below(j, i) && self.tp(a, j) == self.tp(a, i))
    }

    pub fn is_extremal_block(&self, a: &TypedPartialOrder, i: usize) -> bool {
        self.is_maximal_block(a, i) || self.is_minimal_block(a, i)
    }

    /// `B^×`.
    pub fn extremal_blocks(&self, a: &TypedPartialOrder) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_extremal_block(a, i)).collect()
    }

    /// Every block linearly ordered by `<` is a unit block.
    pub fn is_unitary(&self, a: &TypedPartialOrder) -> bool {
        self.blocks.iter().all(|b| b.len() == 1 || !a.less().is_chain_on(b))
    }

    /// The same partition and order read as a typed partial order on blocks.
    pub fn quotient(&self, a: &TypedPartialOrder) -> Result<TypedPartialOrder, FactorError> {
        let types: Vec<OneType> = (0..self.len()).map(|i| self.tp(a, i).clone()).collect();
        TypedPartialOrder::from_parts(a.signature(), &self.order, &types)
    }

    /// Inter-block order lifted to elements.
    pub fn inter_block(&self) -> Relation {
        let n = self.block_of.len();
        Relation::from_fn(n, |x, y| self.below(self.block_of[x], self.block_of[y]))
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Factorization")
            .field("blocks", &self.blocks)
            .field("covers", &self.order.covers())
            .finish()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::logic::Signature;

    pub fn sig(unary: &[&str]) -> Signature {
        Signature::new(unary.iter().map(|s| s.to_string()), Vec::<String>::new(), Distinguished::PartialOrder).unwrap()
    }

    /// Elements labelled by the set of unary predicates (bit mask) they satisfy.
    pub fn tpo(unary: &[&str], labels: &[u32], less: &[(usize, usize)]) -> TypedPartialOrder {
        let sig = sig(unary);
        let mut s = Structure::new(sig, labels.len());
        for (a, &m) in labels.iter().enumerate() {
            for p in 0..unary.len() {
                s.set_unary(p, a, m >> p & 1 == 1);
            }
        }
        let r = Relation::from_pairs(labels.len(), less.iter().copied()).closure();
        for (a, b) in r.pairs() {
            s.set_dist(a, b, true);
        }
        TypedPartialOrder::new(s).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::tpo;
    use super::*;

    #[test]
    fn trivial_factorization() {
        let a = tpo(&["p"], &[0, 1, 0, 1], &[(0, 1)]);
        let f = Factorization::trivial(&a);
        assert_eq!(f.len(), 2);
        assert!(f.order().is_empty());
        let h = tpo(&["p"], &[1, 1, 1], &[]);
        assert_eq!(Factorization::trivial(&h).len(), 1);
    }

    #[test]
    fn rejects_broken_factorizations() {
        let a = tpo(&["p"], &[0, 1, 0], &[(0, 1)]);
        assert_eq!(Factorization::new(&a, vec![vec![0, 1], vec![2]], []).unwrap_err(), FactorError::Mixed(0));
        assert!(matches!(
            Factorization::new(&a, vec![vec![0], vec![1], vec![2]], []),
            Err(FactorError::Unordered(..))
        ));
        assert!(matches!(
            Factorization::new(&a, vec![vec![0, 2], vec![1]], [(0, 1)]),
            Err(FactorError::Unsupported(..))
        ));
        assert!(Factorization::new(&a, vec![vec![0, 2], vec![1]], []).is_ok());
    }
}
