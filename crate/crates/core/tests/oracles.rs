mod common;

use finsat::logic::{evaluate, holds, Distinguished, Signature};
use finsat::normal_forms::{to_standard_nf, WeakNf};
use finsat::solver::{random_formula, random_structure, random_weak_nf, FormulaShape};
use finsat::syntax::{parse_formula, print_formula, read_structure, write_structure};
use proptest::prelude::*;

fn signatures() -> impl Strategy<Value = Signature> {
    (0..3usize, 0..2usize, 0..3u8).prop_map(|(u, b, d)| {
        let dist = [Distinguished::None, Distinguished::PartialOrder, Distinguished::Transitive][d as usize];
        Signature::new((0..u).map(|i| format!("p{i}")), (0..b).map(|i| format!("r{i}")), dist).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluator_matches_the_naive_one(sig in signatures(), seed in any::<u64>(), size in 2..6usize, depth in 1..5usize) {
        let f = random_formula(seed, &sig, &FormulaShape { depth, ..FormulaShape::default() });
        let s = random_structure(seed.wrapping_add(1), &sig, size);
        prop_assert_eq!(evaluate(&s, &f, [None, None]).unwrap(), common::naive_eval(&s, &f));
    }

    #[test]
    fn printing_then_parsing_is_the_identity(sig in signatures(), seed in any::<u64>(), depth in 1..5usize) {
        let f = random_formula(seed, &sig, &FormulaShape { depth, ..FormulaShape::default() });
        let text = print_formula(&f);
        let g = parse_formula(&text, &sig).unwrap();
        prop_assert_eq!(print_formula(&g), text);
        // structurally different trees may print alike; the meaning must not change
        let s = random_structure(seed, &sig, 3);
        prop_assert_eq!(holds(&s, &f).unwrap(), holds(&s, &g).unwrap());
    }

    #[test]
    fn structure_documents_round_trip(sig in signatures(), seed in any::<u64>(), size in 2..7usize) {
        let s = random_structure(seed, &sig, size);
        prop_assert!(s.check_distinguished().is_empty());
        let text = write_structure(&s);
        let back = read_structure(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(write_structure(&back), text);
    }

    #[test]
    fn weak_forms_are_recognised_after_printing(seed in any::<u64>(), m in 1..4usize) {
        let sig = common::po_unary_sig(&["p", "q"]);
        let w = random_weak_nf(seed, &sig, m);
        let g = parse_formula(&print_formula(&w.to_formula()), &sig).unwrap();
        let r = WeakNf::recognize(&g).expect("printed weak form is recognised");
        prop_assert_eq!(r.multiplicity(), m);
    }

    #[test]
    fn standard_form_entails_the_input(seed in any::<u64>(), size in 2..5usize) {
        // any expansion of a model of the normal form satisfies the input: check on
        // random structures over the larger signature
        let sig = Signature::new(["p"], ["r"], Distinguished::None).unwrap();
        let f = random_formula(seed, &sig, &FormulaShape::default());
        let (nf, star) = to_standard_nf(&f, &sig).unwrap();
        let s = random_structure(seed ^ 7, &star, size);
        if holds(&s, &nf.to_formula()).unwrap() {
            prop_assert!(holds(&s.reduct(&sig).unwrap(), &f).unwrap());
        }
    }
}
