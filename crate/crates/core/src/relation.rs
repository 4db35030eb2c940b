//! Dense binary relations on `0..n` and the closure operations the order
//! constructions keep needing.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, bits: vec![false; n * n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (a, b) in pairs {
            r.set(a, b, true);
        }
        r
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(n);
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    r.set(a, b, true);
                }
            }
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: bool) {
        self.bits[a * self.n + b] = v;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| (i / n, i % n))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation { n: self.n, bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect() }
    }

    /// Whether every pair of `self` is in `other`.
    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }

    /// Transitive closure (Warshall).
    pub fn closure(&self) -> Relation {
        let mut r = self.clone();
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if r.get(i, k) {
                    for j in 0..n {
                        if r.get(k, j) {
                            r.bits[i * n + j] = true;
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|a| !self.get(a, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_strict_partial_order(&self) -> bool {
        self.is_irreflexive() && self.is_transitive()
    }

    /// Whether the transitive closure is irreflexive.
    pub fn is_acyclic(&self) -> bool {
        self.closure().is_irreflexive()
    }

    /// Covering pairs of a strict partial order.
    pub fn covers(&self) -> Relation {
        Relation::from_fn(self.n, |a, b| {
            self.get(a, b) && !(0..self.n).any(|c| self.get(a, c) && self.get(c, b))
        })
    }

    /// Length of the longest path starting at each point; the relation must be acyclic.
    pub fn heights(&self) -> Vec<usize> {
        let c = self.closure();
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        // points with fewer successors come first
        order.sort_by_key(|&a| (0..n).filter(|&b| c.get(a, b)).count());
        let mut h = vec![0; n];
        for &a in &order {
            h[a] = (0..n).filter(|&b| self.get(a, b)).map(|b| h[b] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Whether any two distinct points of `set` are related one way or the other.
    pub fn is_chain_on(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| a == b || self.get(a, b) || self.get(b, a)))
    }

    /// The relation restricted to `elems`, reindexed by position.
    pub fn restrict(&self, elems: &[usize]) -> Relation {
        Relation::from_fn(elems.len(), |i, j| self.get(elems[i], elems[j]))
    }

    /// Image under a map into `0..m`.
    pub fn map(&self, m: usize, f: impl Fn(usize) -> usize) -> Relation {
        Relation::from_pairs(m, self.pairs().map(|(a, b)| (f(a), f(b))))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_heights() {
        let r = Relation::from_pairs(4, [(0, 1), (1, 2), (0, 3), (3, 2)]);
        let c = r.closure();
        assert!(c.get(0, 2) && c.is_strict_partial_order());
        assert_eq!(r.heights(), vec![2, 1, 0, 1]);
        assert_eq!(c.covers(), r);
        assert!(!Relation::from_pairs(2, [(0, 1), (1, 0)]).is_acyclic());
    }
}
