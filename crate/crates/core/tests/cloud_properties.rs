use gh_cloud::cloud::{delta_curve, drop_witness, is_diagonal, representation_search, gap_scan};
use gh_cloud::exact::{rat, ratio, rational_pow};
use gh_cloud::random::{random_space_in, rng};
use gh_cloud::sequence::{Exponent, RealSequenceSpace};
use gh_cloud::{gh_exact, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn sequence() -> impl Strategy<Value = RealSequenceSpace> {
    prop_oneof![
        (2i64..=5).prop_map(|q| RealSequenceSpace::geometric(rat(q), Exponent::Identity).unwrap()),
        (2i64..=3).prop_map(|q| RealSequenceSpace::geometric(rat(q), Exponent::Square).unwrap()),
        prop::sample::select(vec![3u64, 5, 7]).prop_map(|p| RealSequenceSpace::prime_power(p).unwrap()),
        (3i64..=7, 2i64..=4).prop_map(|(a, b)| {
            RealSequenceSpace::geometric(ratio(a.max(b + 1), b), Exponent::Identity).unwrap()
        }),
    ]
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (1i64..=5, 1i64..=5).prop_map(|(a, b)| ratio(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_of_a_sequence_with_itself_is_zero(x in sequence(), w in 4usize..=10) {
        let c = delta_curve(&x, &x, w).unwrap();
        prop_assert!(c.rows.iter().all(|r| r.min_abs_delta == rat(0)));
    }

    #[test]
    fn delta_is_symmetric(x in sequence(), y in sequence(), l in coefficient(), w in 4usize..=9) {
        let y = y.scaled(&l).unwrap();
        prop_assert_eq!(delta_curve(&x, &y, w).unwrap().rows, delta_curve(&y, &x, w).unwrap().rows);
    }

    #[test]
    fn drop_levels_meet_the_structural_bound(p in prop::sample::select(vec![3u64, 5, 7, 11]), w in 2usize..=14) {
        let rep = drop_witness(p, w).unwrap();
        prop_assert!(!rep.zero_found);
        for level in &rep.min_delta_by_s {
            prop_assert!(level.min_abs_delta >= num_traits::pow(BigInt::from(p), level.s));
        }
    }

    #[test]
    fn powers_of_q_are_represented(q in 2i64..=5, alpha in -3i64..=3, extra in 0usize..=3) {
        let x = RealSequenceSpace::geometric(rat(q), Exponent::Identity).unwrap();
        let window = alpha.unsigned_abs() as usize + 2 + extra;
        let reps = representation_search(&rational_pow(&rat(q), alpha), &x, window, 0).unwrap();
        prop_assert!(!reps.is_empty());
    }

    #[test]
    fn square_exponents_admit_only_lambda_one(
        q in 2i64..=3,
        a in 1i64..=7,
        b in 1i64..=7,
        window in 6usize..=11,
    ) {
        let lambda = ratio(a, b);
        let rep = gap_scan(&Exponent::Square, &rat(q), &lambda, window, 2).unwrap();
        if lambda == rat(1) {
            prop_assert!(!rep.solutions.is_empty());
            prop_assert!(rep.solutions.iter().all(is_diagonal));
        } else {
            prop_assert!(rep.absent_in_window, "{:?}", rep.solutions);
        }
    }

    #[test]
    fn truncation_scaling_commutes_with_gh(seed in any::<u64>(), l in coefficient()) {
        let mut r = rng(seed);
        let a = random_space_in(&mut r, 1, 5);
        let b = random_space_in(&mut r, 1, 5);
        let base = gh_exact(&a, &b).unwrap().value;
        let scaled = gh_exact(&a.scale(&l).unwrap(), &b.scale(&l).unwrap()).unwrap().value;
        prop_assert_eq!(scaled, base * l);
    }
}
