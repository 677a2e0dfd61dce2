use gh_cloud::exact::{abs_diff, rat, ratio};
use gh_cloud::gh_exact;
use gh_cloud::random::{random_chain, rng};
use gh_cloud::threads::DEFAULT_THREAD_CAP;
use gh_cloud::FiniteMetricSpace;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn thread_distances_satisfy_triangle(seed in any::<u64>(), depth in 1usize..=6) {
        let ts = random_chain(&mut rng(seed), depth, 4);
        let threads = ts.enumerate_threads(DEFAULT_THREAD_CAP).unwrap();
        for level in 1..=depth {
            for a in &threads {
                for b in &threads {
                    for c in &threads {
                        let ab = ts.distance_at(a, b, level).unwrap();
                        let bc = ts.distance_at(b, c, level).unwrap();
                        let ac = ts.distance_at(a, c, level).unwrap();
                        prop_assert!(ac <= ab + bc);
                    }
                }
            }
        }
    }

    #[test]
    fn cauchy_tail_bound(seed in any::<u64>()) {
        let ts = random_chain(&mut rng(seed), 6, 4);
        let threads = ts.enumerate_threads(DEFAULT_THREAD_CAP).unwrap();
        for a in &threads {
            for b in &threads {
                for n in 1..=6usize {
                    for m in n..=6usize {
                        let gap = abs_diff(
                            &ts.distance_at(a, b, n).unwrap(),
                            &ts.distance_at(a, b, m).unwrap(),
                        );
                        prop_assert!(gap < ratio(1, 1 << (n - 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn limit_is_valid_and_close_to_every_level(seed in any::<u64>()) {
        let ts = random_chain(&mut rng(seed), 6, 4);
        let limit = ts.limit_space(DEFAULT_THREAD_CAP).unwrap();
        prop_assert!(FiniteMetricSpace::validate(limit.space.to_matrix()).is_ok());
        let reports = ts.verify_projection_bound(&limit, &rat(0)).unwrap();
        prop_assert_eq!(reports.len(), 6);
        for (k, xn) in ts.spaces().iter().enumerate() {
            let v = gh_exact(xn, &limit.space).unwrap().value;
            prop_assert!(v <= ratio(1, 1 << (k + 1)));
        }
    }
}
