//! Kings and the duplication of non-royal elements.

use std::collections::{BTreeMap, BTreeSet};

use crate::logic::{Distinguished, OneType, Structure, TwoType};
use crate::syntax::write_structure;

/// Elements that alone realise their 1-type, in increasing order.
pub fn kings_of(a: &Structure) -> Vec<usize> {
    let mut census: BTreeMap<OneType, Vec<usize>> = BTreeMap::new();
    for x in 0..a.size() {
        census.entry(a.one_type(x)).or_default().push(x);
    }
    let mut out: Vec<usize> = census.into_values().filter(|v| v.len() == 1).map(|v| v[0]).collect();
    out.sort_unstable();
    out
}

/// The enlarged structure together with the copy maps.
#[derive(Clone, Debug)]
pub struct Duplication {
    pub structure: Structure,
    /// The non-royal elements of the original, `B₁`.
    pub originals: Vec<usize>,
    /// `copies[i][k]` is the element of `B_{i+1}` mapped to `originals[k]`;
    /// `copies[0]` is `B₁` itself.
    pub copies: Vec<Vec<usize>>,
}

impl Duplication {
    /// `f_i` as a map from elements of `B_i` (1-based `i`) to `B₁`.
    pub fn f(&self, i: usize, a: usize) -> Option<usize> {
        let k = self.copies.get(i - 1)?.iter().position(|&c| c == a)?;
        Some(self.originals[k])
    }

    /// `(i, f_i(a))` for a non-royal `a`, or `None` for a king.
    pub fn origin(&self, a: usize) -> Option<(usize, usize)> {
        self.copies
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.iter().position(|&e| e == a).map(|k| (i + 1, self.originals[k])))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DuplicationError {
    #[error("duplication needs the distinguished partial order")]
    NotPartialOrder,
    #[error("at least one copy is required")]
    NoCopies,
    #[error("the input violates the partial-order axioms")]
    BadInput,
    #[error("duplication property ({property}) fails: {detail}\n{bundle}")]
    Property { property: &'static str, detail: String, bundle: String },
}

/// `𝔄_copies`: `B₁` repeated `copies` times in total, with the properties of
/// the construction checked on the result.
pub fn duplicate_nonroyal(a1: &Structure, copies: usize) -> Result<Duplication, DuplicationError> {
    if a1.signature().distinguished() != Distinguished::PartialOrder {
        return Err(DuplicationError::NotPartialOrder);
    }
    if copies == 0 {
        return Err(DuplicationError::NoCopies);
    }
    if !a1.check_distinguished().is_empty() {
        return Err(DuplicationError::BadInput);
    }
    let n = a1.size();
    let kings: BTreeSet<usize> = kings_of(a1).into_iter().collect();
    let originals: Vec<usize> = (0..n).filter(|x| !kings.contains(x)).collect();
    // b^k: another element of the same 1-type, the least such
    let twin: Vec<usize> = originals
        .iter()
        .map(|&x| {
            let t = a1.one_type(x);
            (0..n).find(|&y| y != x && a1.one_type(y) == t).expect("non-royal")
        })
        .collect();
    let total = n + (copies - 1) * originals.len();
    let mut s = Structure::new(a1.signature().clone(), total);
    for x in 0..n {
        s.set_one_type(x, &a1.one_type(x));
        for y in 0..x {
            s.set_cross(x, y, &a1.two_type(x, y));
        }
    }
    let mut all_copies = vec![originals.clone()];
    let mut next = n;
    for _ in 1..copies {
        let mut round = Vec::new();
        for (k, &ak) in originals.iter().enumerate() {
            let new = next;
            next += 1;
            s.set_one_type(new, &s.one_type(ak));
            for b in 0..new {
                let t = if b == ak { s.two_type(twin[k], ak) } else { s.two_type(ak, b) };
                s.set_cross(new, b, &t);
            }
            round.push(new);
        }
        all_copies.push(round);
    }
    let d = Duplication { structure: s, originals, copies: all_copies };
    check_duplication(a1, &d)?;
    Ok(d)
}

fn fail(d: &Duplication, property: &'static str, detail: String) -> DuplicationError {
    DuplicationError::Property { property, detail, bundle: write_structure(&d.structure) }
}

/// Properties (i)–(iv) of the duplication, checked on every stage.
pub fn check_duplication(a1: &Structure, d: &Duplication) -> Result<(), DuplicationError> {
    let s = &d.structure;
    let n = a1.size();
    let original_types: BTreeSet<TwoType> = pairs(n).map(|(x, y)| a1.two_type(x, y)).collect();
    // (i): A₁ sits inside, and no new 2-types appear
    for x in 0..n {
        if s.one_type(x) != a1.one_type(x) {
            return Err(fail(d, "i", format!("1-type of {x} changed")));
        }
    }
    for (x, y) in pairs(s.size()) {
        if x < n && y < n && s.two_type(x, y) != a1.two_type(x, y) {
            return Err(fail(d, "i", format!("pair ({x},{y}) of the original changed")));
        }
        if !original_types.contains(&s.two_type(x, y)) {
            return Err(fail(d, "i", format!("pair ({x},{y}) realises a new 2-type")));
        }
    }
    for i in 2..=d.copies.len() {
        for (k, &a) in d.copies[i - 1].iter().enumerate() {
            let fa = d.originals[k];
            // (ii)
            for b in (0..n).filter(|&b| b != fa) {
                if s.two_type(a, b) != a1.two_type(fa, b) {
                    return Err(fail(d, "ii", format!("tp[{a},{b}] differs from tp[{fa},{b}]")));
                }
            }
            // (iii)
            for j in 2..=i {
                for (l, &b) in d.copies[j - 1].iter().enumerate() {
                    let fb = d.originals[l];
                    if fa != fb && s.two_type(a, b) != a1.two_type(fa, fb) {
                        return Err(fail(d, "iii", format!("tp[{a},{b}] differs from tp[{fa},{fb}]")));
                    }
                }
            }
        }
    }
    // (iv), on each prefix 𝔄_i
    for i in 1..=d.copies.len() {
        let upto = n + (i - 1) * d.originals.len();
        let prefix: Vec<usize> = (0..upto).collect();
        if let Some(v) = s.substructure(&prefix).check_distinguished().first() {
            return Err(fail(d, "iv", format!("stage {i}: {v}")));
        }
    }
    Ok(())
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;

    fn po(unary: &[&str], size: usize) -> Structure {
        Structure::new(Signature::new(unary.iter().copied(), ["r"], Distinguished::PartialOrder).unwrap(), size)
    }

    #[test]
    fn census() {
        let same = po(&[], 3);
        assert!(kings_of(&same).is_empty());
        let mut distinct = po(&["p", "q"], 3);
        distinct.set_unary(0, 0, true);
        distinct.set_unary(1, 1, true);
        assert_eq!(kings_of(&distinct), vec![0, 1, 2]);
        let mut mixed = po(&["p"], 3);
        mixed.set_unary(0, 2, true);
        assert_eq!(kings_of(&mixed), vec![2]);
    }

    #[test]
    fn all_royal_does_not_grow() {
        let mut a = po(&["p"], 2);
        a.set_unary(0, 0, true);
        let d = duplicate_nonroyal(&a, 3).unwrap();
        assert_eq!(d.structure.size(), 2);
    }

    #[test]
    fn antichain_doubles() {
        let a = po(&[], 2);
        let d = duplicate_nonroyal(&a, 2).unwrap();
        assert_eq!(d.structure.size(), 4);
        assert!(d.structure.check_distinguished().is_empty());
        assert_eq!(d.origin(3), Some((2, 1)));
        assert_eq!(d.f(2, 2), Some(0));
    }

    #[test]
    fn chain_with_binary_keeps_order() {
        // 0 < 1 < 2, all of one type, r along the chain
        let mut a = po(&[], 3);
        for (x, y) in [(0, 1), (1, 2), (0, 2)] {
            a.set_dist(x, y, true);
        }
        a.set_binary(0, 0, 1, true);
        a.set_binary(0, 1, 2, true);
        let d = duplicate_nonroyal(&a, 3).unwrap();
        assert_eq!(d.structure.size(), 9);
    }
}
