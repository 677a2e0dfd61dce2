//! Seeded generators for random test instances.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::correspondence::Correspondence;
use crate::exact::{rat, ratio, Rational};
use crate::metric::FiniteMetricSpace;
use crate::threads::ThreadSystem;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random valid space with exactly `n` points.
///
/// Alternates between two families: "band" metrics whose off-diagonal
/// entries all lie in `[L, 2L]` (any such matrix satisfies the triangle
/// inequality), and point sets on the real line, which have degenerate
/// triangles. Small integer ranges make ties common.
pub fn random_space(rng: &mut impl Rng, n: usize) -> FiniteMetricSpace {
    assert!(n >= 1);
    let denom = rng.random_range(1..=3);
    if rng.random_bool(0.5) {
        let mut m = vec![vec![rat(0); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = ratio(rng.random_range(4..=8), denom);
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        FiniteMetricSpace::validate(m).expect("band matrices are metrics")
    } else {
        let mut pool: Vec<i64> = (0..(4 * n as i64 + 4)).collect();
        pool.shuffle(rng);
        let mut xs: Vec<i64> = pool[..n].to_vec();
        xs.sort_unstable();
        let pts: Vec<Rational> = xs.iter().map(|&x| ratio(x, denom)).collect();
        FiniteMetricSpace::from_real_points(&pts).expect("distinct sorted points")
    }
}

/// A random space with between `lo` and `hi` points inclusive.
pub fn random_space_in(rng: &mut impl Rng, lo: usize, hi: usize) -> FiniteMetricSpace {
    let n = rng.random_range(lo..=hi);
    random_space(rng, n)
}

/// A random non-empty subset of `0..n`, sorted.
pub fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A random chain `X₁, …, X_depth` with correspondences whose distortion is
/// strictly below `1/2^k` at link `k` (1-based).
///
/// Each step either perturbs every distance by `d ↦ a·d + c` (which keeps
/// the triangle inequality for `a > 0`, `c ≥ 0`), splits a point into two
/// nearby twins, or merges twins back; sizes stay within `1..=max_points`.
pub fn random_chain(rng: &mut impl Rng, depth: usize, max_points: usize) -> ThreadSystem {
    assert!(depth >= 1 && max_points >= 1);
    let mut spaces = vec![random_space_in(rng, 1, max_points)];
    let mut links = Vec::new();
    for k in 1..depth {
        let budget = ratio(1, 1 << k);
        let prev = spaces.last().expect("non-empty");
        let (next, link) = perturb(rng, prev, &budget, max_points);
        debug_assert!(link.distortion(prev, &next).unwrap() < budget);
        spaces.push(next);
        links.push(link);
    }
    ThreadSystem::new(spaces, links, None).expect("generated chain respects default budgets")
}

fn perturb(
    rng: &mut impl Rng,
    x: &FiniteMetricSpace,
    budget: &Rational,
    max_points: usize,
) -> (FiniteMetricSpace, Correspondence) {
    let n = x.len();
    let diam = x.diameter();
    // Any change strictly inside `budget / 4` per entry keeps dis < budget.
    let quarter = budget / rat(4);
    let choice = rng.random_range(0..3);
    if choice == 1 && n < max_points && n >= 1 {
        // Split point p into p and a twin at distance eps.
        let p = rng.random_range(0..n);
        let min_other = (0..n)
            .filter(|&j| j != p)
            .map(|j| x.dist(p, j).clone())
            .min();
        let mut eps = &quarter * ratio(rng.random_range(1..=3), 4);
        if let Some(mo) = min_other {
            // Twin must satisfy d(p, twin) ≤ 2 d(p, j).
            eps = eps.min(mo);
        }
        let mut m = x.to_matrix();
        for (i, row) in m.iter_mut().enumerate() {
            let v = if i == p { eps.clone() } else { x.dist(i, p).clone() };
            row.push(v);
        }
        let mut last: Vec<Rational> = (0..n)
            .map(|j| if j == p { eps.clone() } else { x.dist(p, j).clone() })
            .collect();
        last.push(rat(0));
        m.push(last);
        let next = FiniteMetricSpace::validate(m).expect("twin extension is a metric");
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        pairs.push((p, n));
        return (next, Correspondence::new(n, n + 1, pairs).expect("bi-total"));
    }
    if choice == 2 && n >= 2 {
        // Merge the closest pair if it is within the budget.
        let (mut bp, mut bq) = (0, 1);
        for i in 0..n {
            for j in i + 1..n {
                if x.dist(i, j) < x.dist(bp, bq) {
                    bp = i;
                    bq = j;
                }
            }
        }
        if *x.dist(bp, bq) < quarter {
            let keep: Vec<usize> = (0..n).filter(|&i| i != bq).collect();
            let next = x.subspace(&keep).expect("non-empty subspace");
            let pairs = (0..n)
                .map(|i| {
                    let target = if i == bq { bp } else { i };
                    (i, keep.iter().position(|&k| k == target).expect("kept"))
                })
                .collect();
            return (next, Correspondence::new(n, n - 1, pairs).expect("bi-total"));
        }
    }
    // d ↦ a·d + c on off-diagonal entries with |(a − 1)·d + c| < budget/2.
    let c = &quarter * ratio(rng.random_range(0..=3), 4);
    let a = if diam == rat(0) {
        rat(1)
    } else {
        let swing = &quarter / &diam * ratio(rng.random_range(0..=3), 4);
        if swing >= ratio(1, 2) || rng.random_bool(0.5) {
            rat(1) + swing
        } else {
            rat(1) - swing
        }
    };
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { rat(0) } else { x.dist(i, j) * &a + &c })
                .collect()
        })
        .collect();
    let next = FiniteMetricSpace::validate(m).expect("affine perturbation is a metric");
    (next, Correspondence::identity(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_spaces_are_valid_and_sized() {
        let mut r = rng(7);
        for n in 1..=7 {
            for _ in 0..20 {
                let x = random_space(&mut r, n);
                assert_eq!(x.len(), n);
                assert!(FiniteMetricSpace::validate(x.to_matrix()).is_ok());
            }
        }
    }

    #[test]
    fn chains_respect_budgets() {
        let mut r = rng(11);
        for _ in 0..30 {
            let ts = random_chain(&mut r, 6, 4);
            assert_eq!(ts.depth(), 6);
            for (k, link) in ts.correspondences().iter().enumerate() {
                let d = link
                    .distortion(&ts.spaces()[k], &ts.spaces()[k + 1])
                    .unwrap();
                assert!(d < ratio(1, 1 << (k + 1)));
                assert!(ts.spaces()[k + 1].len() <= 4);
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = random_space(&mut rng(3), 5);
        let b = random_space(&mut rng(3), 5);
        assert_eq!(a, b);
    }
}
