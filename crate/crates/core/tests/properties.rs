mod support;

use proptest::prelude::*;
use support::props;

fn roots_and_quads() -> impl Strategy<Value = (Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    (0usize..=3).prop_flat_map(|nq| {
        let quads = prop::collection::vec(
            (-4i64..=4, 1i64..=20).prop_filter("negative discriminant", |&(b, c)| b * b < 4 * c),
            nq,
        );
        let roots = prop::collection::vec((-20i64..=20, 1i64..=5), 0..=(6 - 2 * nq));
        (roots, quads)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_agrees_with_known_roots((roots, quads) in roots_and_quads()) {
        if let Err(e) = props::sturm_vs_known_roots(&roots, &quads) {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn norm_multiplicative_and_char_is_min_power(
        field in 0usize..props::FIELDS.len(),
        x in prop::collection::vec(-4i64..=4, 1..=6),
        y in prop::collection::vec(-4i64..=4, 1..=6),
        even_only in any::<bool>(),
    ) {
        let x: Vec<i64> = if even_only {
            x.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { 0 }).collect()
        } else {
            x
        };
        if let Err(e) = props::norm_and_char(field, &x, &y) {
            return Err(TestCaseError::fail(e));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn factorization_multiplies_back(
        coeffs in prop::collection::vec(-30i64..=30, 2..=8),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        seed in any::<u64>(),
    ) {
        if let Err(e) = props::factor_remultiply(&coeffs, p, seed) {
            return Err(TestCaseError::fail(e));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn maximal_family_congruences(seed in any::<u64>()) {
        if let Err(e) = props::maximal_congruences(seed) {
            return Err(TestCaseError::fail(e));
        }
    }
}
