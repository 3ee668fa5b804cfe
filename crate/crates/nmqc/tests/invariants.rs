//! Property tests for the algebraic invariants the library leans on.

use nmqc::numfmt::round_sig12;
use nmqc::{
    classical_bound, decide_feasibility, functional_from_game, synthesize_protocol,
    verify_deterministic, BellFunctional, BooleanFunction, Gf2Matrix, PriorDistribution, Protocol,
};
use proptest::prelude::*;

fn table_strategy(n: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..2u8, 1 << n)
}

fn arity_and_table() -> impl Strategy<Value = (usize, Vec<u8>)> {
    (2..=6usize).prop_flat_map(|n| (Just(n), table_strategy(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walsh_spectrum_inverts_exactly((n, table) in (4..=8usize).prop_flat_map(|n| (Just(n), table_strategy(n)))) {
        let f = BooleanFunction::new(n, table).unwrap();
        let back = f.walsh_spectrum().inverse().unwrap();
        prop_assert_eq!(f, back);
    }

    #[test]
    fn anf_round_trips((n, table) in arity_and_table()) {
        let f = BooleanFunction::new(n, table).unwrap();
        prop_assert_eq!(f.anf().truth_table(), f);
    }

    #[test]
    fn synthesis_is_always_deterministic((n, table) in arity_and_table()) {
        let f = BooleanFunction::new(n, table).unwrap();
        let p = synthesize_protocol(&f);
        prop_assert!(verify_deterministic(&p, &f).unwrap());
        prop_assert!(p.sites() <= (1 << n) - 1);
        for a in p.angles() {
            // angles live in (-1, 1] as multiples of pi
            prop_assert!(a.to_f64() > -1.0 && a.to_f64() <= 1.0);
        }
    }

    #[test]
    fn full_row_budget_is_always_feasible((n, table) in (2..=4usize).prop_flat_map(|n| (Just(n), table_strategy(n)))) {
        let f = BooleanFunction::new(n, table).unwrap();
        let all = Gf2Matrix::from_row_masks((1..(1u64 << n)).collect(), n);
        let verdict = decide_feasibility(&f, &all).unwrap();
        let w = verdict.witness();
        prop_assert!(w.is_some());
        prop_assert!(verify_deterministic(w.unwrap(), &f).unwrap());
    }

    #[test]
    fn classical_bound_is_invariant_under_input_relabeling(
        (n, table) in (2..=5usize).prop_flat_map(|n| (Just(n), table_strategy(n))),
        swap in (0..5usize, 0..5usize),
    ) {
        let (i, j) = (swap.0 % n, swap.1 % n);
        let f = BooleanFunction::new(n, table.clone()).unwrap();
        let permuted: Vec<u8> = (0..(1usize << n))
            .map(|x| {
                let bi = (x >> i) & 1;
                let bj = (x >> j) & 1;
                let y = (x & !(1 << i) & !(1 << j)) | (bj << i) | (bi << j);
                table[y]
            })
            .collect();
        let g = BooleanFunction::new(n, permuted).unwrap();
        let w = PriorDistribution::uniform(n);
        let bf = functional_from_game(&f, &w).unwrap();
        let bg = functional_from_game(&g, &w).unwrap();
        prop_assert_eq!(classical_bound(&bf), classical_bound(&bg));
    }

    #[test]
    fn json_round_trips((n, table) in arity_and_table()) {
        let f = BooleanFunction::new(n, table).unwrap();
        prop_assert_eq!(&BooleanFunction::from_json(&f.to_json()).unwrap(), &f);
        let p = synthesize_protocol(&f);
        prop_assert_eq!(Protocol::from_json(&p.to_json()).unwrap(), p);
        let b = functional_from_game(&f, &PriorDistribution::uniform(n)).unwrap();
        prop_assert_eq!(BellFunctional::from_json(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn sig12_rounding_is_idempotent(x in -1.0e6_f64..1.0e6) {
        let r = round_sig12(x);
        prop_assert_eq!(round_sig12(r), r);
        prop_assert!((r - x).abs() <= x.abs() * 1e-11 + f64::EPSILON);
    }
}
