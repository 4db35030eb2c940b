//! Cells and diatoms, the pieces a model with small cliques is assembled from.

use std::collections::HashMap;

use super::CliqueError;
use crate::logic::{Distinguished, Signature, Structure};
use crate::normal_forms::TransRel;

/// Limits on the enumeration of cells and diatoms.
#[derive(Clone, Debug)]
pub struct CellBudget {
    pub max_size: usize,
    pub max_unary: usize,
    pub max_binary: usize,
    pub max_diatoms: usize,
}

impl Default for CellBudget {
    fn default() -> Self {
        CellBudget { max_size: 2, max_unary: 2, max_binary: 1, max_diatoms: 50_000 }
    }
}

/// A structure on `E ∪ E′` whose cliques are exactly `E` (the first
/// `left_size` elements) and `E′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diatom {
    pub structure: Structure,
    pub left_size: usize,
    /// `L(k)`: the cell `E` is a copy of.
    pub left: usize,
    /// `R(k)`.
    pub right: usize,
    /// `𝔰⟨k⟩`: how `E` sits relative to `E′`; never [`TransRel::Equiv`].
    pub rel: TransRel,
    /// `I(k)`: the same diatom read from the other side.
    pub inverse: usize,
}

impl Diatom {
    pub fn right_size(&self) -> usize {
        self.structure.size() - self.left_size
    }
}

type Key = (usize, Vec<bool>);

fn key(s: &Structure) -> Key {
    let n = s.size();
    let sig = s.signature();
    let mut bits = Vec::new();
    for p in 0..sig.unary().len() {
        bits.extend((0..n).map(|a| s.unary(p, a)));
    }
    for r in 0..sig.binary().len() {
        bits.extend((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| s.binary(r, a, b)));
    }
    bits.extend((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| s.dist(a, b)));
    (n, bits)
}

/// Every cell up to size `n` and every diatom built from two of them.
#[derive(Clone, Debug)]
pub struct CellTable {
    pub sig: Signature,
    pub max_size: usize,
    pub cells: Vec<Structure>,
    pub diatoms: Vec<Diatom>,
    cell_index: HashMap<Key, usize>,
    diatom_index: HashMap<(usize, Key), usize>,
}

/// Cells of exactly `m` elements: `t` is total, except that a single
/// element may or may not carry the loop.
fn cells_of_size(sig: &Signature, m: usize) -> Vec<Structure> {
    let u = sig.unary().len();
    let b = sig.binary().len();
    let free = u * m + b * m * m + usize::from(m == 1);
    (0..1u64 << free)
        .map(|bits| {
            let bit = |i: usize| bits >> i & 1 == 1;
            let mut s = Structure::new(sig.clone(), m);
            let mut i = 0;
            for p in 0..u {
                for a in 0..m {
                    s.set_unary(p, a, bit(i));
                    i += 1;
                }
            }
            for r in 0..b {
                for x in 0..m {
                    for y in 0..m {
                        s.set_binary(r, x, y, bit(i));
                        i += 1;
                    }
                }
            }
            for x in 0..m {
                for y in 0..m {
                    s.set_dist(x, y, m > 1 || bit(i));
                }
            }
            s
        })
        .collect()
}

const CROSS: [TransRel; 3] = [TransRel::Less, TransRel::Greater, TransRel::Incomparable];

impl CellTable {
    /// Enumerates cells of size `1..=n` and all diatoms, refusing anything
    /// beyond the budget.
    pub fn build(sig: &Signature, n: usize, budget: &CellBudget) -> Result<CellTable, CliqueError> {
        if sig.distinguished() != Distinguished::Transitive {
            return Err(CliqueError::NotTransitive("cells need the distinguished `t`".into()));
        }
        if n == 0 || n > budget.max_size || sig.unary().len() > budget.max_unary || sig.binary().len() > budget.max_binary
        {
            return Err(CliqueError::Budget(format!(
                "clique size {n} with {} unary and {} binary predicates exceeds the limits ({}, {}, {})",
                sig.unary().len(),
                sig.binary().len(),
                budget.max_size,
                budget.max_unary,
                budget.max_binary
            )));
        }
        let cells: Vec<Structure> = (1..=n).flat_map(|m| cells_of_size(sig, m)).collect();
        let b = sig.binary().len();
        let cross_bits = |l: &Structure, r: &Structure| 2 * b * l.size() * r.size();
        let total: u128 = cells
            .iter()
            .flat_map(|l| cells.iter().map(move |r| 3u128 << cross_bits(l, r)))
            .sum();
        if total > budget.max_diatoms as u128 {
            return Err(CliqueError::Budget(format!("{total} diatoms exceed the limit of {}", budget.max_diatoms)));
        }
        let mut by_parts: HashMap<(usize, usize, TransRel, u64), usize> = HashMap::new();
        let mut raw = Vec::new();
        for (li, l) in cells.iter().enumerate() {
            for (ri, r) in cells.iter().enumerate() {
                let (e, f) = (l.size(), r.size());
                for rel in CROSS {
                    for bits in 0..1u64 << cross_bits(l, r) {
                        by_parts.insert((li, ri, rel, bits), raw.len());
                        raw.push((li, ri, rel, bits, diatom(sig, l, r, rel, bits, e, f)));
                    }
                }
            }
        }
        let mut diatoms = Vec::with_capacity(raw.len());
        for (li, ri, rel, bits, structure) in raw {
            let (e, f) = (cells[li].size(), cells[ri].size());
            let inverse = by_parts[&(ri, li, rel.reversed(), transpose_bits(bits, b, e, f))];
            diatoms.push(Diatom { structure, left_size: e, left: li, right: ri, rel, inverse });
        }
        let cell_index = cells.iter().enumerate().map(|(j, c)| (key(c), j)).collect();
        let diatom_index = diatoms
            .iter()
            .enumerate()
            .map(|(k, d)| ((d.left_size, key(&d.structure)), k))
            .collect();
        Ok(CellTable { sig: sig.clone(), max_size: n, cells, diatoms, cell_index, diatom_index })
    }

    pub fn cell_of(&self, s: &Structure) -> Option<usize> {
        self.cell_index.get(&key(s)).copied()
    }

    /// The diatom equal to `s`, whose first `left_size` elements form `E`.
    pub fn diatom_of(&self, s: &Structure, left_size: usize) -> Option<usize> {
        self.diatom_index.get(&(left_size, key(s))).copied()
    }

    /// Checks the tables against the structures: restrictions give back the
    /// named cells, inverses swap the sides, and the cliques are `E` and `E′`.
    pub fn check(&self) -> Result<(), CliqueError> {
        let bad = |k: usize, what: &str| Err(CliqueError::Internal(format!("diatom {k}: {what}")));
        for (j, c) in self.cells.iter().enumerate() {
            let d = super::cliques_of(c)?;
            if d.len() != 1 {
                return Err(CliqueError::Internal(format!("cell {j} is not one clique")));
            }
        }
        for (k, d) in self.diatoms.iter().enumerate() {
            let e = d.left_size;
            let n = d.structure.size();
            let left: Vec<usize> = (0..e).collect();
            let right: Vec<usize> = (e..n).collect();
            if d.structure.substructure(&left) != self.cells[d.left] {
                return bad(k, "left restriction differs from L(k)");
            }
            if d.structure.substructure(&right) != self.cells[d.right] {
                return bad(k, "right restriction differs from R(k)");
            }
            let inv = &self.diatoms[d.inverse];
            if inv.inverse != k || inv.rel != d.rel.reversed() {
                return bad(k, "I(I(k)) ≠ k");
            }
            let swapped: Vec<usize> = right.iter().chain(&left).copied().collect();
            if d.structure.substructure(&swapped) != inv.structure || inv.left_size != n - e {
                return bad(k, "I(k) is not the swapped diatom");
            }
            let cl = super::cliques_of(&d.structure)?;
            if cl.cliques != vec![left.clone(), right.clone()] {
                return bad(k, "cliques are not E and E′");
            }
            let rel = TransRel::of(d.structure.dist(0, e), d.structure.dist(e, 0));
            if rel != d.rel {
                return bad(k, "𝔰⟨k⟩ does not match the structure");
            }
        }
        Ok(())
    }
}

fn cross_index(r: usize, i: usize, j: usize, e: usize, f: usize) -> usize {
    (r * e + i) * f + j
}

/// The cross bits of the swapped diatom.
fn transpose_bits(bits: u64, b: usize, e: usize, f: usize) -> u64 {
    let half = b * e * f;
    let mut out = 0;
    for r in 0..b {
        for i in 0..e {
            for j in 0..f {
                let fw = bits >> cross_index(r, i, j, e, f) & 1;
                let bw = bits >> (half + cross_index(r, i, j, e, f)) & 1;
                out |= bw << cross_index(r, j, i, f, e);
                out |= fw << (half + cross_index(r, j, i, f, e));
            }
        }
    }
    out
}

fn diatom(sig: &Signature, l: &Structure, r: &Structure, rel: TransRel, bits: u64, e: usize, f: usize) -> Structure {
    let mut s = Structure::new(sig.clone(), e + f);
    for (cell, off) in [(l, 0), (r, e)] {
        for x in 0..cell.size() {
            s.set_one_type(off + x, &cell.one_type(x));
            for y in (0..cell.size()).filter(|&y| y != x) {
                s.set_cross(off + x, off + y, &cell.two_type(x, y));
            }
        }
    }
    let (fw, bw) = rel.values();
    let half = sig.binary().len() * e * f;
    for i in 0..e {
        for j in 0..f {
            s.set_dist(i, e + j, fw);
            s.set_dist(e + j, i, bw);
            for rr in 0..sig.binary().len() {
                s.set_binary(rr, i, e + j, bits >> cross_index(rr, i, j, e, f) & 1 == 1);
                s.set_binary(rr, e + j, i, bits >> (half + cross_index(rr, i, j, e, f)) & 1 == 1);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_tables() {
        let sig = Signature::new(["p"], Vec::<String>::new(), Distinguished::Transitive).unwrap();
        let t = CellTable::build(&sig, 2, &CellBudget::default()).unwrap();
        // size 1: p and the loop; size 2: p on each element
        assert_eq!(t.cells.len(), 4 + 4);
        assert_eq!(t.diatoms.len(), 8 * 8 * 3);
        t.check().unwrap();
        let with_r = Signature::new(["p"], ["r"], Distinguished::Transitive).unwrap();
        let t = CellTable::build(&with_r, 1, &CellBudget::default()).unwrap();
        assert_eq!(t.cells.len(), 8);
        assert_eq!(t.diatoms.len(), 8 * 8 * 3 * 4);
        t.check().unwrap();
    }

    #[test]
    fn budget_is_enforced() {
        let sig = Signature::new(["p", "q", "s"], Vec::<String>::new(), Distinguished::Transitive).unwrap();
        assert!(matches!(CellTable::build(&sig, 2, &CellBudget::default()), Err(CliqueError::Budget(_))));
        let sig = Signature::new(["p"], ["r"], Distinguished::Transitive).unwrap();
        assert!(matches!(CellTable::build(&sig, 2, &CellBudget::default()), Err(CliqueError::Budget(_))));
    }
}
