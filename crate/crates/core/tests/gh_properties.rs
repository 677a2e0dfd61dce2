use gh_cloud::exact::{abs_diff, rat, ratio, rational_pow};
use gh_cloud::random::{random_permutation, random_space, random_space_in, random_subset, rng};
use gh_cloud::{gh_bounds, gh_exact, gh_exhaustive, FiniteMetricSpace, Rational, SubsetPair};
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9).prop_map(|(a, b)| ratio(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_composes(seed in any::<u64>(), l in lambda(), m in lambda()) {
        let x = random_space_in(&mut rng(seed), 1, 6);
        let twice = x.scale(&l).unwrap().scale(&m).unwrap();
        prop_assert_eq!(twice, x.scale(&(&l * &m)).unwrap());
        prop_assert_eq!(x.scale(&l).unwrap().diameter(), x.diameter() * &l);
    }

    #[test]
    fn real_points_always_validate(xs in prop::collection::btree_set(-50i64..50, 1..8)) {
        let pts: Vec<Rational> = xs.into_iter().map(|v| ratio(v, 3)).collect();
        let s = FiniteMetricSpace::from_real_points(&pts).unwrap();
        prop_assert!(FiniteMetricSpace::validate(s.to_matrix()).is_ok());
    }

    #[test]
    fn hausdorff_is_a_metric_on_subsets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let amb = random_space_in(&mut r, 1, 7);
        let a = random_subset(&mut r, amb.len());
        let b = random_subset(&mut r, amb.len());
        let c = random_subset(&mut r, amb.len());
        let h = |u: &Vec<usize>, v: &Vec<usize>| {
            SubsetPair::new(&amb, u.clone(), v.clone()).unwrap().hausdorff_distance()
        };
        prop_assert_eq!(h(&a, &b), h(&b, &a));
        prop_assert_eq!(h(&a, &b) == rat(0), a == b);
        prop_assert!(h(&a, &c) <= h(&a, &b) + h(&b, &c));
    }

    #[test]
    fn gh_is_symmetric_and_satisfies_triangle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_space_in(&mut r, 1, 4);
        let y = random_space_in(&mut r, 1, 4);
        let z = random_space_in(&mut r, 1, 4);
        let d = |a: &FiniteMetricSpace, b: &FiniteMetricSpace| gh_exact(a, b).unwrap().value;
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
    }

    #[test]
    fn gh_detects_isometry(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_space_in(&mut r, 2, 6);
        let p = random_permutation(&mut r, x.len());
        let perm = x.permuted(&p).unwrap();
        prop_assert_eq!(gh_exact(&x, &perm).unwrap().value, rat(0));
        // Stretching one point away from all others breaks the isometry.
        let mut m = x.to_matrix();
        let bump = x.diameter();
        for j in 1..x.len() {
            m[0][j] = &m[0][j] + &bump;
            m[j][0] = &m[j][0] + &bump;
        }
        let stretched = FiniteMetricSpace::validate(m).unwrap();
        prop_assert!(gh_exact(&x, &stretched).unwrap().value > rat(0));
    }

    #[test]
    fn gh_is_homogeneous(seed in any::<u64>(), l in lambda()) {
        let mut r = rng(seed);
        let x = random_space_in(&mut r, 1, 5);
        let y = random_space_in(&mut r, 1, 5);
        let base = gh_exact(&x, &y).unwrap().value;
        let scaled = gh_exact(&x.scale(&l).unwrap(), &y.scale(&l).unwrap()).unwrap().value;
        prop_assert_eq!(scaled, base * l);
    }

    #[test]
    fn segment_identity(seed in any::<u64>(), l in lambda(), m in lambda()) {
        let x = random_space_in(&mut rng(seed), 1, 5);
        let v = gh_exact(&x.scale(&l).unwrap(), &x.scale(&m).unwrap()).unwrap().value;
        prop_assert_eq!(v, abs_diff(&l, &m) * x.diameter() / rat(2));
    }

    #[test]
    fn bounds_sandwich_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_space_in(&mut r, 1, 6);
        let y = random_space_in(&mut r, 1, 6);
        let b = gh_bounds(&x, &y);
        let v = gh_exact(&x, &y).unwrap().value;
        prop_assert!(b.lower <= v && v <= b.upper);
    }

    #[test]
    fn witness_attains_value(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_space_in(&mut r, 1, 6);
        let y = random_space_in(&mut r, 1, 6);
        let res = gh_exact(&x, &y).unwrap();
        prop_assert_eq!(res.witness.distortion(&x, &y).unwrap(), res.value * rat(2));
    }

    #[test]
    fn embedding_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let amb = random_space_in(&mut r, 1, 7);
        let a = random_subset(&mut r, amb.len());
        let b = random_subset(&mut r, amb.len());
        let h = SubsetPair::new(&amb, a.clone(), b.clone()).unwrap().hausdorff_distance();
        let v = gh_exact(&amb.subspace(&a).unwrap(), &amb.subspace(&b).unwrap()).unwrap().value;
        prop_assert!(v <= h);
    }

    #[test]
    fn branch_and_bound_matches_exhaustive(seed in any::<u64>(), n in 1usize..=6, m in 1usize..=6) {
        prop_assume!(n * m <= 12);
        let mut r = rng(seed);
        let x = random_space(&mut r, n);
        let y = random_space(&mut r, m);
        let fast = gh_exact(&x, &y).unwrap();
        let slow = gh_exhaustive(&x, &y).unwrap();
        prop_assert_eq!(&fast.value, &slow.value);
        prop_assert_eq!(fast.witness, slow.witness);
    }

    #[test]
    fn bounded_space_contracts_to_a_point(seed in any::<u64>(), k in 0i64..=12) {
        let x = random_space_in(&mut rng(seed), 2, 6);
        let lk = rational_pow(&ratio(1, 2), k);
        let p = FiniteMetricSpace::point();
        let v = gh_exact(&x.scale(&lk).unwrap(), &p).unwrap().value;
        prop_assert_eq!(&v, &(&lk * x.diameter() / rat(2)));
        let next = gh_exact(&x.scale(&(lk / rat(2))).unwrap(), &p).unwrap().value;
        prop_assert!(next < v);
    }
}
