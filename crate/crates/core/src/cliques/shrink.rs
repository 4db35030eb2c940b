//! Replacing a large substructure by a small one with the same local
//! behaviour, and its use on a single clique.

use std::collections::{BTreeMap, BTreeSet};

use super::decompose::{cliques_of, order_atom, CliqueDecomposition, OrderAtom};
use super::CliqueError;
use crate::logic::{holds, Distinguished, OneType, Structure, TwoType};
use crate::normal_forms::TransitiveNf;
use crate::syntax::write_structure;

/// The result of replacing `B` by `B′`.
///
/// The elements of `C` come first in their original order, then `B′`.
#[derive(Clone, Debug)]
pub struct Shrunk {
    pub structure: Structure,
    /// For each new element, the element of the input it copies.
    pub origin: Vec<usize>,
    /// Positions of `B′` in `structure`.
    pub replacement: Vec<usize>,
}

fn property(p: &'static str, detail: String, s: &Structure) -> CliqueError {
    CliqueError::Property { property: p, detail, bundle: write_structure(s) }
}

fn check_input(a: &Structure, b: &[usize]) -> Result<Vec<usize>, CliqueError> {
    if b.is_empty() {
        return Err(CliqueError::BadInput("the set to shrink is empty".into()));
    }
    let set: BTreeSet<usize> = b.iter().copied().collect();
    if set.len() != b.len() || b.iter().any(|&x| x >= a.size()) {
        return Err(CliqueError::BadInput("the set to shrink has repeated or out-of-range elements".into()));
    }
    Ok((0..a.size()).filter(|x| !set.contains(x)).collect())
}

fn identity(a: &Structure, c: &[usize], b: &[usize]) -> Shrunk {
    let origin: Vec<usize> = c.iter().chain(b).copied().collect();
    Shrunk {
        structure: a.substructure(&origin),
        replacement: (c.len()..origin.len()).collect(),
        origin,
    }
}

/// Distinct 2-types `tp(x, y)` over `y ∈ ys`, `y ≠ x`, with one witness
/// each, in order of first occurrence.
fn types_into(a: &Structure, x: usize, ys: &[usize]) -> Vec<(TwoType, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &y in ys.iter().filter(|&&y| y != x) {
        let t = a.two_type(x, y);
        if seen.insert(t.clone()) {
            out.push((t, y));
        }
    }
    out
}

/// Replaces `B` in a structure without a distinguished symbol by a
/// substructure `B′` such that
/// (i) the rest of the structure is untouched,
/// (ii) `B′` realises the same 1-types as `B`,
/// (iii) the 2-types inside `B′` and between `B′` and the rest are those of `B`,
/// (iv) every element of `B′` realises at least the 2-types of the element it copies,
/// (v) every outside element sees at least the 2-types it saw into `B`.
///
/// Elements whose 1-type is unique in `B` are kept once; the rest are
/// copied into three rotating groups, each element finding its witnesses in
/// the next group. `B` is returned unchanged when that is no smaller.
pub fn shrink_substructure(a: &Structure, b: &[usize]) -> Result<Shrunk, CliqueError> {
    if a.signature().distinguished() != Distinguished::None {
        return Err(CliqueError::BadInput("shrinking needs a signature without a distinguished symbol".into()));
    }
    let c = check_input(a, b)?;
    let mut census: BTreeMap<OneType, Vec<usize>> = BTreeMap::new();
    for &x in b {
        census.entry(a.one_type(x)).or_default().push(x);
    }
    if b.len() <= 3 * census.len() {
        return Ok(identity(a, &c, b));
    }
    let kings: Vec<usize> = b.iter().copied().filter(|&x| census[&a.one_type(x)].len() == 1).collect();
    let common: Vec<usize> = b.iter().copied().filter(|x| !kings.contains(x)).collect();
    let rep = |t: &OneType| census[t][0];

    // originals that must be copied so that (iii)-(v) survive
    let mut chosen: BTreeSet<usize> = census.values().filter(|v| v.len() > 1).map(|v| v[0]).collect();
    for &x in c.iter().chain(&kings) {
        chosen.extend(types_into(a, x, &common).into_iter().map(|(_, y)| y));
    }
    let mut inner_seen = BTreeSet::new();
    for &x in &common {
        for (t, _) in types_into(a, x, b) {
            if inner_seen.insert(t) {
                chosen.insert(x);
            }
        }
    }
    let chosen: Vec<usize> = chosen.into_iter().collect();
    let needs: BTreeMap<usize, Vec<TwoType>> = chosen
        .iter()
        .map(|&w| (w, types_into(a, w, &common).into_iter().map(|(t, _)| t).collect()))
        .collect();
    let mut demand: BTreeMap<OneType, usize> = BTreeMap::new();
    for ts in needs.values() {
        let mut per: BTreeMap<&OneType, usize> = BTreeMap::new();
        for t in ts {
            *per.entry(&t.right).or_default() += 1;
        }
        for (o, k) in per {
            let d = demand.entry(o.clone()).or_default();
            *d = (*d).max(k);
        }
    }
    let mut group = chosen.clone();
    for (o, &k) in &demand {
        while group.iter().filter(|&&w| a.one_type(w) == *o).count() < k {
            group.push(rep(o));
        }
    }
    if kings.len() + 3 * group.len() >= b.len() {
        return Ok(identity(a, &c, b));
    }

    let mut origin: Vec<usize> = c.iter().chain(&kings).copied().collect();
    for _ in 0..3 {
        origin.extend(&group);
    }
    let start = c.len() + kings.len();
    let n = origin.len();
    let mut s = Structure::new(a.signature().clone(), n);
    for (e, &w) in origin.iter().enumerate() {
        s.set_one_type(e, &a.one_type(w));
    }
    // default 2-types, copied from the originals
    for e in 0..n {
        for f in 0..e {
            let (we, wf) = (origin[e], origin[f]);
            let t = if we != wf {
                a.two_type(we, wf)
            } else {
                let twin = census[&a.one_type(we)].iter().copied().find(|&y| y != we).expect("not a king");
                a.two_type(we, twin)
            };
            s.set_cross(e, f, &t);
        }
    }
    // witnesses for each copy in the next group
    let g = group.len();
    for k in 0..3 {
        let next = (k + 1) % 3;
        for i in 0..g {
            let e = start + k * g + i;
            let mut used: BTreeMap<&OneType, usize> = BTreeMap::new();
            for t in &needs[&group[i]] {
                let slot = used.entry(&t.right).or_default();
                let targets = (0..g).filter(|&j| a.one_type(group[j]) == t.right);
                let j = targets.clone().nth(*slot).ok_or_else(|| CliqueError::Internal("witness demand miscounted".into()))?;
                *slot += 1;
                s.set_cross(e, start + next * g + j, t);
            }
        }
    }
    let out = Shrunk { structure: s, origin, replacement: (c.len()..n).collect() };
    check_shrink(a, b, &out)?;
    Ok(out)
}

fn type_set(s: &Structure, xs: &[usize], ys: &[usize]) -> BTreeSet<TwoType> {
    xs.iter()
        .flat_map(|&x| ys.iter().filter(move |&&y| y != x).map(move |&y| s.two_type(x, y)))
        .collect()
}

/// Checks properties (i)-(v) of [`shrink_substructure`].
pub fn check_shrink(a: &Structure, b: &[usize], out: &Shrunk) -> Result<(), CliqueError> {
    let s = &out.structure;
    let c = check_input(a, b)?;
    let cn: Vec<usize> = (0..c.len()).collect();
    let bn = &out.replacement;
    if out.origin[..c.len()] != c[..] || s.size() != c.len() + bn.len() {
        return Err(property("i", "the outside elements were moved".into(), s));
    }
    // (i)
    if s.substructure(&cn) != a.substructure(&c) {
        return Err(property("i", "the outside substructure changed".into(), s));
    }
    // (ii)
    let ones = |st: &Structure, xs: &[usize]| xs.iter().map(|&x| st.one_type(x)).collect::<BTreeSet<_>>();
    if ones(s, bn) != ones(a, b) {
        return Err(property("ii", "the 1-types realised in the replacement differ".into(), s));
    }
    // (iii)
    if type_set(s, bn, bn) != type_set(a, b, b) {
        return Err(property("iii", "the 2-types inside the replacement differ".into(), s));
    }
    if type_set(s, bn, &cn) != type_set(a, b, &c) {
        return Err(property("iii", "the 2-types towards the rest differ".into(), s));
    }
    // (iv)
    let all_old: Vec<usize> = (0..a.size()).collect();
    let all_new: Vec<usize> = (0..s.size()).collect();
    for &e in bn {
        let mine = type_set(s, &[e], &all_new);
        if !b.iter().any(|&x| a.one_type(x) == s.one_type(e) && type_set(a, &[x], &all_old).is_subset(&mine)) {
            return Err(property("iv", format!("element {e} lost a 2-type"), s));
        }
    }
    // (v)
    for (i, &x) in c.iter().enumerate() {
        if !type_set(a, &[x], b).is_subset(&type_set(s, &[i], bn)) {
            return Err(property("v", format!("outside element {x} lost a 2-type into the set"), s));
        }
    }
    Ok(())
}

/// Shrinks one clique of a transitive structure.
///
/// The clique is marked by a fresh predicate, the rest by its order relative
/// to the clique, and `t` is treated as an ordinary binary predicate while
/// [`shrink_substructure`] runs. The clique structure is checked afterwards.
pub fn shrink_clique(a: &Structure, clique: &[usize]) -> Result<Shrunk, CliqueError> {
    let d = cliques_of(a)?;
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    if !d.cliques.contains(&sorted) {
        return Err(CliqueError::BadInput("the given elements are not a clique".into()));
    }
    let c = check_input(a, clique)?;
    if clique.len() == 1 {
        return Ok(identity(a, &c, clique));
    }
    let sig = a.signature();
    let mut bar = sig.with_distinguished(Distinguished::None);
    let markers: Vec<usize> = ["u", "ult", "ugt", "uinc"]
        .iter()
        .map(|m| {
            let name = bar.fresh_unary(m);
            bar.unary_index(&name).expect("fresh")
        })
        .collect();
    let q0 = bar.fresh_binary("q");
    let mut plain = a.with_signature_unchecked(sig.with_distinguished(Distinguished::None)).expand(&bar)?;
    let q = bar.binary_index(&q0).expect("fresh");
    let k = sig.unary().len();
    for x in 0..a.size() {
        for y in 0..a.size() {
            plain.set_binary(q, x, y, a.dist(x, y));
        }
    }
    for &x in clique {
        plain.set_unary(markers[0], x, true);
    }
    for &x in &c {
        let m = match order_atom(a, x, clique[0]) {
            OrderAtom::Less => 1,
            OrderAtom::Greater => 2,
            OrderAtom::Incomparable => 3,
            _ => return Err(CliqueError::Internal("an outside element is in the clique".into())),
        };
        plain.set_unary(markers[m], x, true);
    }
    let shrunk = shrink_substructure(&plain, clique)?;
    let p = &shrunk.structure;
    let mut back = Structure::new(sig.clone(), p.size());
    for x in 0..p.size() {
        for i in 0..k {
            back.set_unary(i, x, p.unary(i, x));
        }
        for y in 0..p.size() {
            for r in 0..sig.binary().len() {
                back.set_binary(r, x, y, p.binary(r, x, y));
            }
            back.set_dist(x, y, p.binary(q, x, y));
        }
    }
    let out = Shrunk { structure: back, origin: shrunk.origin, replacement: shrunk.replacement };
    check_clique_order(&d, d.clique_of[clique[0]], &out)?;
    Ok(out)
}

/// The cliques after shrinking are those before with the shrunk clique
/// replaced, ordered the same way.
fn check_clique_order(before: &CliqueDecomposition, shrunk: usize, out: &Shrunk) -> Result<(), CliqueError> {
    let s = &out.structure;
    let after = cliques_of(s).map_err(|e| property("clique", e.to_string(), s))?;
    let old_of = |x: usize| before.clique_of[out.origin[x]];
    let b_new: BTreeSet<usize> = out.replacement.iter().copied().collect();
    for members in &after.cliques {
        let olds: BTreeSet<usize> = members.iter().map(|&x| old_of(x)).collect();
        if olds.len() != 1 {
            return Err(property("clique", "two cliques merged".into(), s));
        }
        let old = *olds.iter().next().unwrap();
        let expected = if old == shrunk { b_new.len() } else { before.cliques[old].len() };
        if members.len() != expected {
            return Err(property("clique", "a clique was split".into(), s));
        }
    }
    for (i, ci) in after.cliques.iter().enumerate() {
        for (j, cj) in after.cliques.iter().enumerate() {
            if after.less(i, j) != before.less(old_of(ci[0]), old_of(cj[0])) {
                return Err(property("clique", format!("the order between cliques {i} and {j} changed"), s));
            }
        }
    }
    Ok(())
}

/// Shrinks every clique of a model of `φ` in turn, checking after each step
/// that `φ` still holds.
pub fn bound_cliques(phi: &TransitiveNf, a: &Structure) -> Result<Structure, CliqueError> {
    let f = phi.to_formula();
    if !holds(a, &f)? {
        return Err(CliqueError::NotAModel);
    }
    let rounds = cliques_of(a)?.len();
    let mut cur = a.clone();
    // each step moves the processed clique to the end, so the clique of the
    // first element is always an unprocessed one
    for _ in 0..rounds {
        let d = cliques_of(&cur)?;
        let first = d.cliques[d.clique_of[0]].clone();
        cur = shrink_clique(&cur, &first)?.structure;
        if !holds(&cur, &f)? {
            return Err(property("bound", "the formula fails after shrinking a clique".into(), &cur));
        }
    }
    Ok(cur)
}
