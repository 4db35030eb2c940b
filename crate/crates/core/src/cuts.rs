//! Reducing the number of blocks: depths, cuts, frontiers, cut equivalence
//! and the collapse of the blocks strictly between two equivalent cuts.

use std::collections::BTreeSet;
use std::fmt;

use crate::factorization::{fc_holds, is_thin, FactorError, Factorization, TypedPartialOrder};
use crate::normal_forms::BasicSet;
use crate::relation::Relation;
use crate::syntax::write_structure;

/// The cut `lower + 0.5`. Depth grows downwards, so a cut with a larger value
/// lies below one with a smaller value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pub lower: usize,
}

impl Cut {
    pub fn value(self) -> f64 {
        self.lower as f64 + 0.5
    }

    /// A block of depth `d` lies above the cut.
    pub fn above(self, d: usize) -> bool {
        d <= self.lower
    }

    pub fn below(self, d: usize) -> bool {
        d > self.lower
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.5", self.lower)
    }
}

/// `d(B)`: length of the longest `≪`-path starting at each block.
pub fn depths(f: &Factorization) -> Vec<usize> {
    f.covers().heights()
}

/// `d(𝔹)`; zero for a factorization with no ordered blocks.
pub fn depth(f: &Factorization) -> usize {
    depths(f).into_iter().max().unwrap_or(0)
}

/// All cuts, from the top down.
pub fn cuts(f: &Factorization) -> Vec<Cut> {
    (0..depth(f)).map(|lower| Cut { lower }).collect()
}

/// `F⁻(χ)`, `F⁺(χ)` and `B^×` as sorted block indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub cut: Cut,
    pub below: Vec<usize>,
    pub above: Vec<usize>,
    pub extremal: Vec<usize>,
}

impl Frontier {
    /// `F(χ)`.
    pub fn all(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.below.iter().chain(&self.above).chain(&self.extremal).copied().collect();
        s.into_iter().collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CutError {
    #[error("cut {0} is out of range for depth {1}")]
    OutOfRange(Cut, usize),
    #[error("cut {0} must lie strictly below cut {1}")]
    NotBelow(Cut, Cut),
    #[error("the frontier map does not match the cuts")]
    StaleMap,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("verification failed after reducing at ({cuts}): {reason}\n{bundle}")]
    Verification { cuts: String, reason: String, bundle: ReproBundle },
}

pub fn frontier(a: &TypedPartialOrder, f: &Factorization, chi: Cut) -> Result<Frontier, CutError> {
    let d = depths(f);
    let max = d.iter().copied().max().unwrap_or(0);
    if chi.lower >= max {
        return Err(CutError::OutOfRange(chi, max));
    }
    let mut below = Vec::new();
    let mut above = Vec::new();
    for t in a.realized() {
        let of_type = f.blocks_of_type(a, &t);
        if let Some(&b) = of_type.iter().filter(|&&i| chi.above(d[i])).max_by_key(|&&i| d[i]) {
            above.push(b);
        }
        if let Some(&b) = of_type.iter().filter(|&&i| chi.below(d[i])).min_by_key(|&&i| d[i]) {
            below.push(b);
        }
    }
    below.sort_unstable();
    above.sort_unstable();
    Ok(Frontier { cut: chi, below, above, extremal: f.extremal_blocks(a) })
}

/// `f_{χ,χ′}` as a list of `(B, f(B))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierMap {
    pub lower: Cut,
    pub upper: Cut,
    pub pairs: Vec<(usize, usize)>,
}

impl FrontierMap {
    pub fn apply(&self, b: usize) -> Option<usize> {
        self.pairs.iter().find(|(x, _)| *x == b).map(|(_, y)| *y)
    }
}

/// The unique map witnessing that `chi` (below) and `chi2` (above) are
/// equivalent, if there is one.
pub fn cuts_equivalent(
    a: &TypedPartialOrder,
    f: &Factorization,
    chi: Cut,
    chi2: Cut,
) -> Result<Option<FrontierMap>, CutError> {
    if chi.lower <= chi2.lower {
        return Err(CutError::NotBelow(chi, chi2));
    }
    let lo = frontier(a, f, chi)?;
    let hi = frontier(a, f, chi2)?;
    let same_type = |set: &[usize], b: usize| set.iter().copied().find(|&c| f.tp(a, c) == f.tp(a, b));
    let dom = lo.all();
    let mut pairs = Vec::new();
    for &b in &dom {
        // (E1): forced by membership; conflicting requirements mean no map
        let mut image: Option<usize> = None;
        let mut require = |c: Option<usize>| -> bool {
            match (c, image) {
                (None, _) => false,
                (Some(c), None) => {
                    image = Some(c);
                    true
                }
                (Some(c), Some(i)) => c == i,
            }
        };
        if lo.extremal.contains(&b) && !require(Some(b)) {
            return Ok(None);
        }
        if lo.below.contains(&b) && !require(same_type(&hi.below, b)) {
            return Ok(None);
        }
        if lo.above.contains(&b) && !require(same_type(&hi.above, b)) {
            return Ok(None);
        }
        let img = image.expect("every frontier block is in one of the three parts");
        if lo.below.contains(&b) && !hi.below.contains(&img)
            || lo.above.contains(&b) && !hi.above.contains(&img)
            || lo.extremal.contains(&b) && img != b
        {
            return Ok(None);
        }
        pairs.push((b, img));
    }
    // (E2): bijective, type-preserving, order-preserving both ways
    let mut images: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    images.sort_unstable();
    images.dedup();
    if images != hi.all() || images.len() != pairs.len() {
        return Ok(None);
    }
    for &(x, fx) in &pairs {
        if f.tp(a, x) != f.tp(a, fx) {
            return Ok(None);
        }
        for &(y, fy) in &pairs {
            if f.below(x, y) != f.below(fx, fy) {
                return Ok(None);
            }
        }
    }
    // same relations to every extremal block
    for &(x, fx) in pairs.iter().filter(|(x, _)| lo.below.contains(x) || lo.above.contains(x)) {
        for &e in &lo.extremal {
            if f.below(x, e) != f.below(fx, e) || f.below(e, x) != f.below(e, fx) || (x == e) != (fx == e) {
                return Ok(None);
            }
        }
    }
    Ok(Some(FrontierMap { lower: chi, upper: chi2, pairs }))
}

/// `𝔄/(χ,χ′)` and `𝔹/(χ,χ′)`, with the old index of each surviving element.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub structure: TypedPartialOrder,
    pub factorization: Factorization,
    /// `elements[new] = old`.
    pub elements: Vec<usize>,
    /// `blocks[new] = old`.
    pub blocks: Vec<usize>,
}

pub fn reduce_at(a: &TypedPartialOrder, f: &Factorization, map: &FrontierMap) -> Result<Reduction, CutError> {
    let fresh = cuts_equivalent(a, f, map.lower, map.upper)?;
    if fresh.as_ref() != Some(map) {
        return Err(CutError::StaleMap);
    }
    let (chi, chi2) = (map.lower, map.upper);
    let d = depths(f);
    let kept: Vec<usize> = (0..f.len()).filter(|&i| chi.below(d[i]) || chi2.above(d[i])).collect();
    let lo = frontier(a, f, chi)?;
    let pos = |old: usize| kept.iter().position(|&k| k == old);
    let mut edges = Relation::empty(kept.len());
    for (i, &x) in kept.iter().enumerate() {
        for (j, &y) in kept.iter().enumerate() {
            let same_side = chi.below(d[x]) == chi.below(d[y]);
            if same_side && f.below(x, y) {
                edges.set(i, j, true);
            }
        }
    }
    for &b in &lo.below {
        for &c in &lo.above {
            if f.below(b, c) {
                let fc = map.apply(c).ok_or(CutError::StaleMap)?;
                let (i, j) = (pos(b).ok_or(CutError::StaleMap)?, pos(fc).ok_or(CutError::StaleMap)?);
                edges.set(i, j, true);
            }
        }
    }
    let block_order = edges.closure();
    let mut elements: Vec<usize> = kept.iter().flat_map(|&k| f.block(k).iter().copied()).collect();
    elements.sort_unstable();
    let new_of = |x: usize| elements.binary_search(&x).expect("kept element");
    let m = elements.len();
    let new_block: Vec<usize> = elements.iter().map(|&x| pos(f.block_of(x)).unwrap()).collect();
    let inter = Relation::from_fn(m, |i, j| block_order.get(new_block[i], new_block[j]));
    let intra = Relation::from_fn(m, |i, j| new_block[i] == new_block[j] && a.lt(elements[i], elements[j]));
    let extremal = Relation::from_fn(m, |i, j| {
        let (x, y) = (elements[i], elements[j]);
        a.lt(x, y) && a.is_extremal(x) && a.is_extremal(y)
    });
    let less = inter.union(&intra).union(&extremal).closure();
    let types: Vec<_> = elements.iter().map(|&x| a.tp(x).clone()).collect();
    let structure = TypedPartialOrder::from_parts(a.signature(), &less, &types)?;
    let blocks: Vec<Vec<usize>> = kept.iter().map(|&k| f.block(k).iter().map(|&x| new_of(x)).collect()).collect();
    let block_edges: Vec<(usize, usize)> = block_order.pairs().collect();
    let factorization = Factorization::new(&structure, blocks, block_edges)?;
    // Factorization::new sorts blocks by least element; recover their origins
    let origin: Vec<usize> =
        factorization.blocks().iter().map(|b| f.block_of(elements[b[0]])).collect();
    Ok(Reduction { structure, factorization, elements, blocks: origin })
}

/// Everything needed to replay a failed reduction step.
#[derive(Clone, Debug)]
pub struct ReproBundle {
    pub structure: String,
    pub blocks: Vec<Vec<usize>>,
    pub block_order: Vec<(usize, usize)>,
    pub psi: String,
}

impl fmt::Display for ReproBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# structure")?;
        write!(f, "{}", self.structure)?;
        writeln!(f, "# blocks {:?}", self.blocks)?;
        writeln!(f, "# block order {:?}", self.block_order)?;
        writeln!(f, "# basic formulas")?;
        write!(f, "{}", self.psi)
    }
}

fn bundle(a: &TypedPartialOrder, f: &Factorization, psi: &BasicSet) -> ReproBundle {
    ReproBundle {
        structure: write_structure(a.structure()),
        blocks: f.blocks().to_vec(),
        block_order: f.covers().pairs().collect(),
        psi: psi.to_string(),
    }
}

/// Checks everything a single reduction step is supposed to preserve.
pub fn check_reduction(
    a: &TypedPartialOrder,
    f: &Factorization,
    r: &Reduction,
    psi: &BasicSet,
) -> Result<(), String> {
    let (b, g) = (&r.structure, &r.factorization);
    if g.len() >= f.len() {
        return Err("block count did not decrease".into());
    }
    for i in 0..g.len() {
        for j in 0..g.len() {
            if g.below(i, j) && !f.below(r.blocks[i], r.blocks[j]) {
                return Err(format!("new block order {i} ≪ {j} is not in the old one"));
            }
        }
    }
    let n = b.size();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (r.elements[i], r.elements[j]);
            if b.lt(i, j) && !a.lt(x, y) {
                return Err(format!("new order has {x} < {y}, the old one does not"));
            }
            if b.tp(i) == b.tp(j) && a.lt(x, y) && !b.lt(i, j) {
                return Err(format!("same-type pair {x} < {y} was lost"));
            }
        }
        // every incomparable partner in the old order has a replacement
        let x = r.elements[i];
        if (0..a.size()).any(|y| a.incomparable(x, y)) && !(0..n).any(|j| b.incomparable(i, j)) {
            return Err(format!("element {x} lost all incomparable partners"));
        }
    }
    for p in &psi.formulas {
        if !b.satisfies(&p.to_formula(&psi.sig)).map_err(|e| e.to_string())? {
            return Err(format!("{} fails", p.kind()));
        }
    }
    for p in psi.fc_subset() {
        if !fc_holds(b, g, p).map_err(|e| e.to_string())? {
            return Err(format!("factorization no longer controls {}", p.kind()));
        }
    }
    if !is_thin(b, g).map_err(|e| e.to_string())? {
        return Err("not thin".into());
    }
    if f.is_unitary(a) && !g.is_unitary(b) {
        return Err("not unitary".into());
    }
    Ok(())
}

/// The first equivalent pair, scanning by increasing distance between cuts.
pub fn find_equivalent(a: &TypedPartialOrder, f: &Factorization) -> Result<Option<FrontierMap>, CutError> {
    let d = depth(f);
    for gap in 1..d {
        for upper in 0..d - gap {
            let lower = upper + gap;
            if let Some(m) = cuts_equivalent(a, f, Cut { lower }, Cut { lower: upper })? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// Repeatedly collapses equivalent cuts, verifying each step.
pub fn shrink_block_count(
    a: &TypedPartialOrder,
    f: &Factorization,
    psi: &BasicSet,
) -> Result<(TypedPartialOrder, Factorization, usize), CutError> {
    let mut cur = (a.clone(), f.clone());
    let mut steps = 0;
    while let Some(m) = find_equivalent(&cur.0, &cur.1)? {
        let r = reduce_at(&cur.0, &cur.1, &m)?;
        if let Err(reason) = check_reduction(&cur.0, &cur.1, &r, psi) {
            return Err(CutError::Verification {
                cuts: format!("{}, {}", m.lower, m.upper),
                reason,
                bundle: bundle(&cur.0, &cur.1, psi),
            });
        }
        cur = (r.structure, r.factorization);
        steps += 1;
    }
    Ok((cur.0, cur.1, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{unit_refinement, Factorization};
    use crate::logic::{Distinguished, OneType, Signature, Structure};

    fn chain(types: &[u32]) -> TypedPartialOrder {
        let sig = Signature::new(["p".to_string(), "q".to_string()], Vec::<String>::new(), Distinguished::PartialOrder)
            .unwrap();
        let n = types.len();
        let mut s = Structure::new(sig, n);
        for (a, &m) in types.iter().enumerate() {
            s.set_one_type(a, &OneType { unary: vec![m & 1 == 1, m & 2 == 2], diagonal: vec![], trans_loop: false });
            for b in a + 1..n {
                s.set_dist(a, b, true);
            }
        }
        TypedPartialOrder::new(s).unwrap()
    }

    #[test]
    fn depths_of_a_chain() {
        let a = chain(&[1, 2, 3]);
        let f = Factorization::new(&a, vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(depths(&f), vec![2, 1, 0]);
        let fr = frontier(&a, &f, Cut { lower: 0 }).unwrap();
        assert_eq!(fr.above, vec![2]);
        assert_eq!(fr.below.len(), 2);
        assert!(frontier(&a, &f, Cut { lower: 2 }).is_err());
    }

    #[test]
    fn periodic_chain_collapses() {
        let a = chain(&[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]);
        let f = unit_refinement(&a, &Factorization::trivial(&a)).unwrap();
        let m = find_equivalent(&a, &f).unwrap().expect("a repeated segment gives equivalent cuts");
        let r = reduce_at(&a, &f, &m).unwrap();
        assert!(r.factorization.len() < f.len());
        let psi = BasicSet { sig: a.signature().clone(), formulas: vec![] };
        check_reduction(&a, &f, &r, &psi).unwrap();
        let (b, g, steps) = shrink_block_count(&a, &f, &psi).unwrap();
        assert!(steps >= 1);
        assert!(find_equivalent(&b, &g).unwrap().is_none());
    }

    #[test]
    fn extremal_block_between_cuts_blocks_equivalence() {
        let a = chain(&[1, 2, 3]);
        let f = Factorization::new(&a, vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2)]).unwrap();
        assert!(cuts_equivalent(&a, &f, Cut { lower: 1 }, Cut { lower: 0 }).unwrap().is_none());
    }
}
