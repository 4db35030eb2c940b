//! Oracles and fixture builders shared by the integration tests.

#![allow(dead_code)]

use finsat::logic::{Distinguished, Formula, OneType, Signature, Structure, Var};
use finsat::normal_forms::{Basic, BasicSet};
use finsat::factorization::TypedPartialOrder;
use rand::seq::SliceRandom;
use rand::Rng;

/// Direct recursive evaluation over assignments, sharing nothing with the
/// library evaluator except the structure accessors.
pub fn naive_eval(s: &Structure, f: &Formula) -> bool {
    fn go(s: &Structure, f: &Formula, env: &mut [usize; 2]) -> bool {
        let at = |v: &Var| env[matches!(v, Var::Y) as usize];
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Unary(p, v) => {
                let i = s.signature().unary().iter().position(|q| q == p).expect("unary in signature");
                s.unary(i, at(v))
            }
            Formula::Binary(r, v, w) => {
                let i = s.signature().binary().iter().position(|q| q == r).expect("binary in signature");
                s.binary(i, at(v), at(w))
            }
            Formula::Less(v, w) | Formula::Trans(v, w) => s.dist(at(v), at(w)),
            Formula::Eq(v, w) => at(v) == at(w),
            Formula::Not(g) => !go(s, g, env),
            Formula::And(gs) => gs.iter().all(|g| go(s, g, env)),
            Formula::Or(gs) => gs.iter().any(|g| go(s, g, env)),
            Formula::Implies(a, b) => !go(s, a, env) || go(s, b, env),
            Formula::Iff(a, b) => go(s, a, env) == go(s, b, env),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let slot = matches!(v, Var::Y) as usize;
                let saved = env[slot];
                let want_all = matches!(f, Formula::Forall(..));
                let mut result = want_all;
                for a in 0..s.size() {
                    env[slot] = a;
                    if go(s, g, env) != want_all {
                        result = !want_all;
                        break;
                    }
                }
                env[slot] = saved;
                result
            }
        }
    }
    go(s, f, &mut [0, 0])
}

pub fn po_unary_sig(names: &[&str]) -> Signature {
    Signature::new(names.iter().copied(), Vec::<String>::new(), Distinguished::PartialOrder).unwrap()
}

/// The strongly connected components of the graph of the distinguished
/// relation, by repeated reachability.
pub fn scc_partition(s: &Structure) -> Vec<Vec<usize>> {
    let n = s.size();
    let mut reach = vec![vec![false; n]; n];
    for (x, row) in reach.iter_mut().enumerate() {
        row[x] = true;
        let mut stack = vec![x];
        while let Some(a) = stack.pop() {
            for b in 0..n {
                if s.dist(a, b) && !row[b] {
                    row[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&y| reach[x][y] && reach[y][x]).collect();
        for &y in &comp {
            seen[y] = true;
        }
        out.push(comp);
    }
    out
}

/// Every candidate basic formula over the realized types of `a` that `a`
/// satisfies.
pub fn satisfied_basics(a: &TypedPartialOrder) -> Vec<Basic> {
    let sig = a.signature();
    let types = a.realized();
    let x = Var::X;
    let mut mus = vec![Formula::True];
    for p in sig.unary() {
        mus.push(Formula::unary(p, x));
        mus.push(Formula::not(Formula::unary(p, x)));
    }
    for t in &types {
        mus.push(t.to_formula(sig, x));
    }
    let mut all = Vec::new();
    for alpha in &types {
        all.push(Basic::B1a(alpha.clone()));
        all.push(Basic::B2a(alpha.clone()));
        all.push(Basic::B5a(alpha.clone()));
        for beta in types.iter().filter(|b| *b != alpha) {
            all.push(Basic::B1b(alpha.clone(), beta.clone()));
            all.push(Basic::B2b(alpha.clone(), beta.clone()));
            all.push(Basic::B3(alpha.clone(), beta.clone()));
            all.push(Basic::B4(alpha.clone(), beta.clone()));
            all.push(Basic::B5b(alpha.clone(), beta.clone()));
        }
        for mu in &mus {
            all.push(Basic::B6(alpha.clone(), mu.clone()));
            all.push(Basic::B7(alpha.clone(), mu.clone()));
            all.push(Basic::B8(alpha.clone(), mu.clone()));
        }
    }
    for mu in &mus {
        all.push(Basic::B9(mu.clone()));
        all.push(Basic::B10(mu.clone()));
    }
    all.into_iter().filter(|b| a.satisfies(&b.to_formula(sig)).unwrap()).collect()
}

/// A random subset of the satisfied basic formulas, always keeping the
/// factor-controllable ones with probability one half each.
pub fn conforming_set(a: &TypedPartialOrder, rng: &mut impl Rng, keep: f64) -> BasicSet {
    let mut pool = satisfied_basics(a);
    pool.shuffle(rng);
    let formulas = pool.into_iter().filter(|_| rng.gen_bool(keep)).collect();
    BasicSet { sig: a.signature().clone(), formulas }
}

/// One-type with the given unary bits over a unary signature.
pub fn unary_type(bits: &[bool]) -> OneType {
    OneType { unary: bits.to_vec(), diagonal: vec![], trans_loop: false }
}

/// Levels stacked bottom to top: every element of a lower level lies below
/// every element of a higher one, elements of one level are incomparable.
/// Each level is `(type index, width)`, the type index read as bits over
/// `p`, `q`.
pub fn layered(levels: &[(u8, usize)]) -> Structure {
    let sig = po_unary_sig(&["p", "q"]);
    let n: usize = levels.iter().map(|l| l.1).sum();
    let mut s = Structure::new(sig, n);
    let mut level_of = Vec::new();
    for (i, &(t, w)) in levels.iter().enumerate() {
        for _ in 0..w {
            level_of.push((i, t));
        }
    }
    for (x, &(i, t)) in level_of.iter().enumerate() {
        s.set_unary(0, x, t & 1 == 1);
        s.set_unary(1, x, t & 2 == 2);
        for (y, &(j, _)) in level_of.iter().enumerate() {
            s.set_dist(x, y, i < j);
        }
    }
    s
}

/// Two layered structures side by side with nothing between them.
pub fn parallel(a: &Structure, b: &Structure) -> Structure {
    let n = a.size() + b.size();
    let mut s = Structure::new(a.signature().clone(), n);
    for (base, part) in [(0, a), (a.size(), b)] {
        for x in 0..part.size() {
            s.set_one_type(base + x, &part.one_type(x));
            for y in 0..part.size() {
                s.set_dist(base + x, base + y, part.dist(x, y));
            }
        }
    }
    s
}
