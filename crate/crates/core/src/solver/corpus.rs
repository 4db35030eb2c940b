//! Small formulas with known behaviour, used by tests and the CLI docs.

use crate::logic::{Distinguished, Logic, Signature, Structure};

/// `t` is irreflexive and every element has a `t`-successor: no finite models.
pub const INFINITY_AXIOM: &str = "(forall x !t(x, x)) & forall x exists y t(x, y)";

/// The conjuncts forcing an infinite anti-chain with a partial order over
/// unary predicates only. The first two make the `p`-elements a non-empty
/// linear order.
pub const ANTICHAIN: [&str; 5] = [
    "exists x p(x)",
    "forall x forall y (p(x) & p(y) -> x < y | x = y | y < x)",
    "forall x (p(x) -> exists y (!x < y & !y < x & q(y)))",
    "forall x (q(x) -> exists y (x < y & p(y)))",
    "forall x forall y (q(x) & q(y) -> !x < y & !y < x)",
];

/// The conjunction of `parts`, each parenthesised.
pub fn conjunction(parts: &[&str]) -> String {
    parts.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(" & ")
}

/// A canonical formula: its text, its logic and whether it has finite models.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub name: String,
    pub text: String,
    pub logic: Logic,
    pub finitely_satisfiable: bool,
}

/// The two finitely unsatisfiable formulas and every relaxation obtained by
/// dropping one conjunct.
///
/// Dropping the anti-chain conjunct itself does not help: the top `p`-element
/// needs an incomparable `q`-element, which in turn needs a `p`-element above
/// it, hence above the top.
pub fn canonical() -> Vec<Canonical> {
    let mut out = vec![
        Canonical {
            name: "infinity axiom".into(),
            text: INFINITY_AXIOM.into(),
            logic: Logic::L2Trans,
            finitely_satisfiable: false,
        },
        Canonical {
            name: "infinity axiom without irreflexivity".into(),
            text: "forall x exists y t(x, y)".into(),
            logic: Logic::L2Trans,
            finitely_satisfiable: true,
        },
        Canonical {
            name: "infinity axiom without successors".into(),
            text: "forall x !t(x, x)".into(),
            logic: Logic::L2Trans,
            finitely_satisfiable: true,
        },
        Canonical {
            name: "anti-chain".into(),
            text: conjunction(&ANTICHAIN),
            logic: Logic::L2PoUnary,
            finitely_satisfiable: false,
        },
    ];
    for drop in 0..ANTICHAIN.len() {
        let rest: Vec<&str> = ANTICHAIN.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, s)| *s).collect();
        out.push(Canonical {
            name: format!("anti-chain without conjunct {}", drop + 1),
            text: conjunction(&rest),
            logic: Logic::L2PoUnary,
            finitely_satisfiable: drop != 4,
        });
    }
    out
}

/// The first `k` rungs of the anti-chain ladder: `a₁ < … < a_k` satisfy `p`,
/// `b₁ … b_k` satisfy `q`, `b_i < a_{i+1}`, closed under transitivity.
/// Elements `0..k` are the `a_i`, `k..2k` the `b_i`.
pub fn antichain_prefix(k: usize) -> Structure {
    assert!(k >= 1);
    let sig = Signature::new(["p", "q"], Vec::<String>::new(), Distinguished::PartialOrder).expect("valid signature");
    let mut s = Structure::new(sig, 2 * k);
    for i in 0..k {
        s.set_unary(0, i, true);
        s.set_unary(1, k + i, true);
        for j in i + 1..k {
            s.set_dist(i, j, true);
            s.set_dist(k + i, j, true);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::holds;
    use crate::syntax::parse_formula;

    #[test]
    fn prefixes_are_partial_orders_satisfying_the_first_two_conjuncts() {
        for k in 1..6 {
            let s = antichain_prefix(k);
            assert!(s.check_distinguished().is_empty());
            for c in &ANTICHAIN[..2] {
                let f = parse_formula(c, s.signature()).unwrap();
                assert!(holds(&s, &f).unwrap(), "{c} at k={k}");
            }
            // the third and fifth hold too; the fourth fails at the top rung
            let fourth = parse_formula(ANTICHAIN[3], s.signature()).unwrap();
            assert!(!holds(&s, &fourth).unwrap());
        }
    }

    #[test]
    fn relaxations_are_listed() {
        let c = canonical();
        assert_eq!(c.len(), 9);
        assert_eq!(c.iter().filter(|c| !c.finitely_satisfiable).count(), 3);
    }
}
