//! Seeded generators of formulas and structures for property tests and fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{Distinguished, Formula, Signature, Structure, Var};
use crate::normal_forms::WeakNf;

/// Shape of [`random_formula`]'s output.
#[derive(Clone, Debug)]
pub struct FormulaShape {
    /// Nesting depth of connectives and quantifiers.
    pub depth: usize,
    /// Chance that an inner node is a quantifier.
    pub quantifier_rate: f64,
    /// Whether `x = y` may appear.
    pub equality: bool,
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape { depth: 3, quantifier_rate: 0.3, equality: true }
    }
}

fn var(rng: &mut ChaCha8Rng) -> Var {
    if rng.gen() {
        Var::X
    } else {
        Var::Y
    }
}

fn atom(rng: &mut ChaCha8Rng, sig: &Signature, shape: &FormulaShape) -> Formula {
    let u = sig.unary().len();
    let b = sig.binary().len();
    let d = usize::from(sig.distinguished() != Distinguished::None);
    let e = usize::from(shape.equality);
    let total = u + b + d + e;
    if total == 0 {
        return Formula::from_bool(rng.gen());
    }
    let k = rng.gen_range(0..total);
    if k < u {
        Formula::Unary(sig.unary()[k].clone(), var(rng))
    } else if k < u + b {
        Formula::Binary(sig.binary()[k - u].clone(), var(rng), var(rng))
    } else if k < u + b + d {
        let (a, c) = (var(rng), var(rng));
        match sig.distinguished() {
            Distinguished::PartialOrder => Formula::Less(a, c),
            _ => Formula::Trans(a, c),
        }
    } else {
        Formula::Eq(Var::X, Var::Y)
    }
}

fn gen(rng: &mut ChaCha8Rng, sig: &Signature, shape: &FormulaShape, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return atom(rng, sig, shape);
    }
    if rng.gen_bool(shape.quantifier_rate) {
        let v = var(rng);
        let body = gen(rng, sig, shape, depth - 1);
        return if rng.gen() { Formula::forall(v, body) } else { Formula::exists(v, body) };
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(gen(rng, sig, shape, depth - 1)),
        1 => Formula::And(vec![gen(rng, sig, shape, depth - 1), gen(rng, sig, shape, depth - 1)]),
        2 => Formula::Or(vec![gen(rng, sig, shape, depth - 1), gen(rng, sig, shape, depth - 1)]),
        _ => Formula::implies(gen(rng, sig, shape, depth - 1), gen(rng, sig, shape, depth - 1)),
    }
}

/// A sentence over `sig`; free variables of the generated body are closed
/// by random quantifiers.
pub fn random_formula(seed: u64, sig: &Signature, shape: &FormulaShape) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = gen(&mut rng, sig, shape, shape.depth);
    for v in f.free_vars().into_iter().rev() {
        f = if rng.gen() { Formula::forall(v, f) } else { Formula::exists(v, f) };
    }
    f
}

/// A structure over `sig`; the distinguished relation is a strict partial
/// order or a transitive relation as the signature requires.
pub fn random_structure(seed: u64, sig: &Signature, size: usize) -> Structure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Structure::new(sig.clone(), size);
    for p in 0..sig.unary().len() {
        for a in 0..size {
            s.set_unary(p, a, rng.gen());
        }
    }
    for r in 0..sig.binary().len() {
        for a in 0..size {
            for b in 0..size {
                s.set_binary(r, a, b, rng.gen());
            }
        }
    }
    let density = rng.gen_range(0.1..0.5);
    match sig.distinguished() {
        Distinguished::None => {}
        Distinguished::PartialOrder => {
            // edges along a random linear extension, then closed
            let mut perm: Vec<usize> = (0..size).collect();
            for i in (1..size).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            for i in 0..size {
                for j in i + 1..size {
                    if rng.gen_bool(density) {
                        s.set_dist(perm[i], perm[j], true);
                    }
                }
            }
            close(&mut s);
        }
        Distinguished::Transitive => {
            for a in 0..size {
                for b in 0..size {
                    if rng.gen_bool(density) {
                        s.set_dist(a, b, true);
                    }
                }
            }
            close(&mut s);
        }
    }
    s
}

fn close(s: &mut Structure) {
    let n = s.size();
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if s.dist(a, k) && s.dist(k, b) {
                    s.set_dist(a, b, true);
                }
            }
        }
    }
}

fn literal_conj(rng: &mut ChaCha8Rng, sig: &Signature, vars: &[Var]) -> Formula {
    let mut parts = Vec::new();
    for p in sig.unary() {
        for &v in vars {
            if rng.gen_bool(0.3) {
                let a = Formula::Unary(p.clone(), v);
                parts.push(if rng.gen() { a } else { Formula::not(a) });
            }
        }
    }
    Formula::And(parts)
}

/// A weak normal form over a partial order with unary predicates only, with
/// `m` witness conjuncts.
pub fn random_weak_nf(seed: u64, sig: &Signature, m: usize) -> WeakNf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, y) = (Var::X, Var::Y);
    let zetas = (0..rng.gen_range(0..2)).map(|_| literal_conj(&mut rng, sig, &[x])).collect();
    let mut clauses = Vec::new();
    for _ in 0..rng.gen_range(0..3) {
        let a = literal_conj(&mut rng, sig, &[x, y]);
        let order = match rng.gen_range(0..3) {
            0 => Formula::Less(x, y),
            1 => Formula::Less(y, x),
            _ => Formula::True,
        };
        clauses.push(Formula::not(Formula::And(vec![a, order])));
    }
    let eta = Formula::And(clauses);
    let thetas = (0..m)
        .map(|_| {
            let order = match rng.gen_range(0..4) {
                0 => Formula::Less(x, y),
                1 => Formula::Less(y, x),
                2 => Formula::And(vec![Formula::not(Formula::Less(x, y)), Formula::not(Formula::Less(y, x))]),
                _ => Formula::True,
            };
            let guard = literal_conj(&mut rng, sig, &[x]);
            Formula::implies(guard, Formula::And(vec![order, literal_conj(&mut rng, sig, &[y])]))
        })
        .collect();
    WeakNf { zetas, eta, thetas }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, print_formula};

    fn sig(d: Distinguished) -> Signature {
        Signature::new(["p", "q"], ["r"], d).unwrap()
    }

    #[test]
    fn seeds_are_reproducible() {
        let s = sig(Distinguished::PartialOrder);
        let shape = FormulaShape::default();
        assert_eq!(random_formula(7, &s, &shape), random_formula(7, &s, &shape));
        assert_eq!(random_structure(7, &s, 5), random_structure(7, &s, 5));
    }

    #[test]
    fn structures_respect_the_distinguished_relation() {
        for d in [Distinguished::PartialOrder, Distinguished::Transitive] {
            for seed in 0..50 {
                assert!(random_structure(seed, &sig(d), 6).check_distinguished().is_empty());
            }
        }
    }

    #[test]
    fn formulas_are_sentences_that_print_and_parse() {
        let s = sig(Distinguished::Transitive);
        for seed in 0..100 {
            let f = random_formula(seed, &s, &FormulaShape::default());
            assert!(f.is_sentence());
            assert_eq!(parse_formula(&print_formula(&f), &s).unwrap(), f);
        }
    }

    #[test]
    fn weak_forms_validate() {
        let s = Signature::new(["p", "q"], Vec::<String>::new(), Distinguished::PartialOrder).unwrap();
        for seed in 0..20 {
            random_weak_nf(seed, &s, 2).validate().unwrap();
        }
    }
}
