// SPDX-License-Identifier: Apache-2.0

use exactq::boolfun::{
    decision_tree_depth, degree, is_and_isomorphic, multilinear, npn_canonical, parse_function, NpnTransform,
    TruthTable,
};
use exactq::formula::{random_read_once, recognize_read_once};
use exactq::synth::{synthesize, verify_certificate, Certificate};
use proptest::prelude::*;

fn table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (1..=max_n).prop_flat_map(|n| any::<u64>().prop_map(move |w| TruthTable::from_u64(n, w)))
}

fn with_transform(max_n: usize) -> impl Strategy<Value = (TruthTable, NpnTransform)> {
    table(max_n).prop_flat_map(|f| {
        let n = f.arity();
        (
            Just(f),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            0u32..1 << n,
            any::<bool>(),
        )
            .prop_map(|(f, perm, input_neg, output_neg)| {
                (
                    f,
                    NpnTransform {
                        perm,
                        input_neg,
                        output_neg,
                    },
                )
            })
    })
}

proptest! {
    #[test]
    fn text_round_trip(f in table(6)) {
        prop_assert_eq!(parse_function(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn restriction_recombines(f in table(6), var in 1usize..=6) {
        prop_assume!(var <= f.arity());
        let lo = f.restrict(var, false).unwrap();
        let hi = f.restrict(var, true).unwrap();
        prop_assert_eq!(TruthTable::shannon_combine(var, &lo, &hi).unwrap(), f);
    }

    #[test]
    fn canonical_form_is_class_invariant((f, t) in with_transform(5)) {
        let g = t.apply(&f).unwrap();
        prop_assert_eq!(npn_canonical(&f).unwrap().0, npn_canonical(&g).unwrap().0);
        prop_assert_eq!(is_and_isomorphic(&f), is_and_isomorphic(&g));
    }

    #[test]
    fn canonical_transform_maps_to_canonical(f in table(5)) {
        let (c, t) = npn_canonical(&f).unwrap();
        prop_assert_eq!(t.apply(&f).unwrap(), c);
    }

    #[test]
    fn polynomial_interpolates(f in table(6)) {
        let p = multilinear(&f).unwrap();
        for m in 0..f.len() {
            prop_assert_eq!(p.eval(m), i64::from(f.get(m)));
        }
    }

    #[test]
    fn depth_bounds(f in table(6)) {
        let d = decision_tree_depth(&f).unwrap() as usize;
        prop_assert!(degree(&f).unwrap() <= d && d <= f.arity());
        prop_assert_eq!(d == 0, f.is_constant());
    }

    #[test]
    fn certificates_verify_and_meet_bound(f in table(5)) {
        let c = synthesize(&f);
        prop_assert!(verify_certificate(&c).is_ok());
        let n = f.arity() as u32;
        if is_and_isomorphic(&f) {
            prop_assert_eq!(c.claimed_queries, n);
        } else {
            prop_assert!(c.claimed_queries < n.max(1));
        }
    }

    #[test]
    fn certificate_json_round_trip(f in table(4)) {
        let c = synthesize(&f);
        let text = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        prop_assert!(verify_certificate(&back).is_ok());
        prop_assert_eq!(back.function, c.function);
        prop_assert_eq!(back.claimed_queries, c.claimed_queries);
    }

    #[test]
    fn random_formulas_are_recognized(n in 1usize..=8, seed in any::<u64>()) {
        let f = random_read_once(n, seed).to_truth_table_with_arity(n).unwrap();
        let g = recognize_read_once(&f).unwrap();
        prop_assert!(g.is_some());
        prop_assert_eq!(g.unwrap().to_truth_table_with_arity(n).unwrap(), f);
    }
}
