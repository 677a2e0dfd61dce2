//! End-to-end scenarios, one per acceptance criterion.
//!
//! Each scenario draws its random instances from a seeded generator, checks
//! an exact identity or bound, and reports pass/fail with its wall time
//! against a fixed limit. Exceeding the limit is a failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cloud::{drop_witness, is_diagonal, representation_search};
use crate::correspondence::{GhError, EXHAUSTIVE_CAP};
use crate::exact::{format_rational, rat, ratio, rational_pow, Rational};
use crate::gh::{gh_exact_with, gh_exhaustive, SolverConfig};
use crate::metric::{FiniteMetricSpace, SubsetPair};
use crate::random::{random_chain, random_permutation, random_space, random_space_in, random_subset, rng};
use crate::sequence::{Exponent, RealSequenceSpace};
use crate::stabilizer::{gcd_qpow, mersenne, solve_repunit_equation, stabilizer_member};
use crate::threads::DEFAULT_THREAD_CAP;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_DROP_WINDOW: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproConfig {
    pub solver: SolverConfig,
    pub drop_window: usize,
    pub seed: u64,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            solver: SolverConfig::default(),
            drop_window: DEFAULT_DROP_WINDOW,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
    pub limit_secs: f64,
}

impl std::fmt::Display for ScenarioOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>8.3}s / {:>3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_secs,
            self.limit_secs,
            self.detail
        )
    }
}

type Check = fn(&ReproConfig) -> Result<String, String>;

/// `(id, name, time limit in seconds, check)` for every scenario.
pub const SCENARIOS: [(u32, &str, u64, Check); 14] = [
    (1, "one-point identity", 10, one_point_identity),
    (2, "scaling homogeneity", 30, scaling_homogeneity),
    (3, "segment identity", 30, segment_identity),
    (4, "solver oracle equivalence", 60, solver_oracle),
    (5, "pseudometric properties", 60, pseudometric),
    (6, "hausdorff bound", 30, hausdorff_bound),
    (7, "gcd identity", 5, gcd_identity),
    (8, "repunit equation", 5, repunit_equation),
    (9, "stabilizer decision", 10, stabilizer_decision),
    (10, "drop witness", 60, drop),
    (11, "return jump", 5, return_jump),
    (12, "square-exponent rigidity", 60, square_rigidity),
    (13, "thread construction", 120, thread_construction),
    (14, "bounded contraction", 10, contraction),
];

pub fn run_scenario(id: u32, config: &ReproConfig) -> Option<ScenarioOutcome> {
    let &(id, name, limit, check) = SCENARIOS.iter().find(|s| s.0 == id)?;
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| check(config)))
        .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
    let elapsed = start.elapsed();
    let limit_d = Duration::from_secs(limit);
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if elapsed > limit_d {
        passed = false;
        detail = format!("over time limit; {detail}");
    }
    Some(ScenarioOutcome {
        id,
        name,
        passed,
        detail,
        elapsed_secs: elapsed.as_secs_f64(),
        limit_secs: limit as f64,
    })
}

pub fn run_all(config: &ReproConfig) -> Vec<ScenarioOutcome> {
    SCENARIOS
        .iter()
        .filter_map(|s| run_scenario(s.0, config))
        .collect()
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn gh(x: &FiniteMetricSpace, y: &FiniteMetricSpace, c: &ReproConfig) -> Result<Rational, String> {
    gh_exact_with(x, y, &c.solver)
        .map(|r| r.value)
        .map_err(|e: GhError| e.to_string())
}

fn scenario_rng(c: &ReproConfig, id: u64) -> crate::random::TestRng {
    rng(c.seed.wrapping_mul(1_000_003).wrapping_add(id))
}

fn one_point_identity(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 1);
    let p = FiniteMetricSpace::point();
    for t in 0..50 {
        let x = random_space_in(&mut r, 1, 6);
        let v = gh(&p, &x, c)?;
        if v != x.diameter() / rat(2) {
            return Err(format!("instance {t}: got {}", format_rational(&v)));
        }
    }
    Ok("50 spaces".into())
}

fn scaling_homogeneity(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 2);
    let lambdas = [ratio(1, 3), ratio(1, 2), rat(2), ratio(7, 5)];
    for t in 0..30 {
        let x = random_space_in(&mut r, 1, 4);
        let y = random_space_in(&mut r, 1, 4);
        let base = gh(&x, &y, c)?;
        for l in &lambdas {
            let v = gh(&x.scale(l).unwrap(), &y.scale(l).unwrap(), c)?;
            if v != &base * l {
                return Err(format!("pair {t}, lambda {}", format_rational(l)));
            }
        }
    }
    Ok("30 pairs x 4 coefficients".into())
}

fn segment_identity(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 3);
    let grid = [rat(0), ratio(1, 2), rat(1), rat(3)];
    for t in 0..20 {
        let x = random_space_in(&mut r, 1, 4);
        for l in &grid {
            for m in &grid {
                let v = gh(
                    &x.scale_or_collapse(l).unwrap(),
                    &x.scale_or_collapse(m).unwrap(),
                    c,
                )?;
                let expected = crate::exact::abs_diff(l, m) * x.diameter() / rat(2);
                if v != expected {
                    return Err(format!(
                        "space {t}, ({}, {})",
                        format_rational(l),
                        format_rational(m)
                    ));
                }
            }
        }
    }
    Ok("20 spaces x 16 grid points".into())
}

fn solver_oracle(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 4);
    let shapes: Vec<(usize, usize)> = (1..=EXHAUSTIVE_CAP)
        .flat_map(|n| (1..=EXHAUSTIVE_CAP / n).map(move |m| (n, m)))
        .filter(|&(n, m)| n.max(m) <= crate::gh::DEFAULT_MAX_POINTS)
        .collect();
    for t in 0..100 {
        let (n, m) = shapes[r.random_range(0..shapes.len())];
        let x = random_space(&mut r, n);
        let y = random_space(&mut r, m);
        let fast = gh(&x, &y, c)?;
        let slow = gh_exhaustive(&x, &y).map_err(|e| e.to_string())?.value;
        if fast != slow {
            return Err(format!(
                "instance {t} ({n}x{m}): {} vs {}",
                format_rational(&fast),
                format_rational(&slow)
            ));
        }
    }
    Ok(format!("100 instances over {} shapes", shapes.len()))
}

fn pseudometric(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 5);
    for t in 0..50 {
        let x = random_space_in(&mut r, 1, 4);
        let y = random_space_in(&mut r, 1, 4);
        let z = random_space_in(&mut r, 1, 4);
        let xy = gh(&x, &y, c)?;
        let yz = gh(&y, &z, c)?;
        let xz = gh(&x, &z, c)?;
        if xy != gh(&y, &x, c)? || yz != gh(&z, &y, c)? || xz != gh(&z, &x, c)? {
            return Err(format!("triple {t}: asymmetric"));
        }
        if xz > &xy + &yz || xy > &xz + &yz || yz > &xy + &xz {
            return Err(format!("triple {t}: triangle inequality"));
        }
    }
    for t in 0..20 {
        let x = random_space_in(&mut r, 1, 6);
        let p = random_permutation(&mut r, x.len());
        let v = gh(&x, &x.permuted(&p).unwrap(), c)?;
        if !v.is_zero() {
            return Err(format!("isometry {t}: got {}", format_rational(&v)));
        }
    }
    Ok("50 triples, 20 permutations".into())
}

fn hausdorff_bound(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 6);
    let mut tight = 0;
    for t in 0..50 {
        let amb = random_space_in(&mut r, 1, 7);
        let a = random_subset(&mut r, amb.len());
        let b = random_subset(&mut r, amb.len());
        let h = SubsetPair::new(&amb, a.clone(), b.clone())
            .map_err(|e| e.to_string())?
            .hausdorff_distance();
        let v = gh(&amb.subspace(&a).unwrap(), &amb.subspace(&b).unwrap(), c)?;
        if v > h {
            return Err(format!("pair {t}: {} > {}", format_rational(&v), format_rational(&h)));
        }
        tight += usize::from(v == h);
    }
    Ok(format!("50 subset pairs, {tight} tight"))
}

fn gcd_identity(_: &ReproConfig) -> Result<String, String> {
    let mut count = 0;
    for q in 2..=10 {
        for n in 1..=30 {
            for m in 1..=30 {
                let v = gcd_qpow(q, n, m).map_err(|e| e.to_string())?;
                let direct = mersenne(q, n).gcd(&mersenne(q, m));
                if v != direct {
                    return Err(format!("q={q}, n={n}, m={m}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} equalities"))
}

fn repunit_equation(_: &ReproConfig) -> Result<String, String> {
    let spot = solve_repunit_equation(2, 4, 6).map_err(|e| e.to_string())?;
    if (spot.a1.clone(), spot.a2.clone()) != (BigInt::from(21), BigInt::from(5)) {
        return Err(format!("spot value (2,4,6) gave ({}, {})", spot.a1, spot.a2));
    }
    let mut count = 0;
    for q in 2..=7 {
        for n in 1..=20 {
            for m in 1..=20 {
                let s = solve_repunit_equation(q, n, m).map_err(|e| e.to_string())?;
                if &s.a1 * mersenne(q, n) != &s.a2 * mersenne(q, m) {
                    return Err(format!("equation fails at q={q}, n={n}, m={m}"));
                }
                if !s.a1.gcd(&s.a2).is_one() {
                    return Err(format!("not coprime at q={q}, n={n}, m={m}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} solutions"))
}

fn stabilizer_decision(_: &ReproConfig) -> Result<String, String> {
    let mut members = 0;
    for q in [2u64, 3, 5] {
        let mut found: Vec<(Rational, i64)> = Vec::new();
        for a in 1..=200i64 {
            for b in 1..=200i64 {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let lambda = ratio(a, b);
                let got = stabilizer_member(&lambda, q).map_err(|e| e.to_string())?;
                // Independent oracle: compare against the list of powers.
                let expected = (-8i64..=8).find(|&e| rational_pow(&rat(q as i64), e) == lambda);
                if got != expected {
                    return Err(format!("q={q}, lambda={a}/{b}: {got:?} vs {expected:?}"));
                }
                if let Some(alpha) = got {
                    found.push((lambda, alpha));
                }
            }
        }
        for (l, a) in &found {
            let inv = stabilizer_member(&l.recip(), q).map_err(|e| e.to_string())?;
            if inv != Some(-a) {
                return Err(format!("inverse closure fails for q={q}"));
            }
            for (m, b) in &found {
                let prod = stabilizer_member(&(l * m), q).map_err(|e| e.to_string())?;
                if prod != Some(a + b) {
                    return Err(format!("product closure fails for q={q}"));
                }
            }
        }
        members += found.len();
    }
    Ok(format!("{members} members across q in {{2, 3, 5}}"))
}

fn drop(c: &ReproConfig) -> Result<String, String> {
    let window = c.drop_window;
    let top = 17.min(window.saturating_sub(1));
    for p in [3u64, 5, 7] {
        let rep = drop_witness(p, window).map_err(|e| e.to_string())?;
        if rep.zero_found {
            return Err(format!("p={p}: zero found at {:?}", rep.zero_witness));
        }
        for level in rep.min_delta_by_s.iter().filter(|l| l.s <= top) {
            if !level.holds {
                return Err(format!("p={p}: |delta| < p^s at s={}", level.s));
            }
        }
    }
    Ok(format!("window {window}, levels s <= {top}"))
}

fn return_jump(_: &ReproConfig) -> Result<String, String> {
    let mut counts = Vec::new();
    for p in [3u64, 5] {
        let x = RealSequenceSpace::prime_power(p).map_err(|e| e.to_string())?;
        let reps = representation_search(&rat(p as i64), &x, 10, 0).map_err(|e| e.to_string())?;
        if reps.is_empty() {
            return Err(format!("p={p}: no representation"));
        }
        counts.push(reps.len());
    }
    Ok(format!("{counts:?} representations for p = 3, 5"))
}

fn square_rigidity(_: &ReproConfig) -> Result<String, String> {
    let (window, floor) = (14, 3);
    for q in [2i64, 3] {
        let x = RealSequenceSpace::geometric(rat(q), Exponent::Square).map_err(|e| e.to_string())?;
        for lambda in [rat(3), ratio(1, 3), ratio(5, 2)] {
            let reps = representation_search(&lambda, &x, window, floor).map_err(|e| e.to_string())?;
            if !reps.is_empty() {
                return Err(format!("q={q}, lambda={}: {reps:?}", format_rational(&lambda)));
            }
        }
        let diag = representation_search(&rat(1), &x, window, floor).map_err(|e| e.to_string())?;
        let pairs = (window - floor) * (window - floor - 1) / 2;
        if diag.len() != pairs || !diag.iter().all(is_diagonal) {
            return Err(format!("q={q}, lambda=1: {} solutions, expected {pairs} diagonal", diag.len()));
        }
    }
    Ok("no off-diagonal representation in (3, 14]".into())
}

fn thread_construction(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 13);
    let mut min_slack: Option<Rational> = None;
    for t in 0..20 {
        let ts = random_chain(&mut r, 6, 4);
        let limit = ts.limit_space(DEFAULT_THREAD_CAP).map_err(|e| e.to_string())?;
        let reports = ts
            .verify_projection_bound(&limit, &Rational::zero())
            .map_err(|e| format!("chain {t}: {e}"))?;
        for rep in &reports {
            if min_slack.as_ref().is_none_or(|s| rep.slack < *s) {
                min_slack = Some(rep.slack.clone());
            }
        }
        for (k, xn) in ts.spaces().iter().enumerate() {
            let level = k + 1;
            match gh_exact_with(xn, &limit.space, &c.solver) {
                Ok(res) => {
                    if res.value > ratio(1, 1 << level) {
                        return Err(format!(
                            "chain {t}, level {level}: d_GH = {}",
                            format_rational(&res.value)
                        ));
                    }
                }
                Err(e) if e.is_resource_limit() => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!(
        "20 chains, smallest slack {}",
        min_slack.as_ref().map(format_rational).unwrap_or_default()
    ))
}

fn contraction(c: &ReproConfig) -> Result<String, String> {
    let mut r = scenario_rng(c, 14);
    let half = ratio(1, 2);
    let p = FiniteMetricSpace::point();
    for t in 0..10 {
        let x = random_space_in(&mut r, 2, 6);
        let mut prev: Option<Rational> = None;
        for k in 0..=10 {
            let lk = rational_pow(&half, k);
            let v = gh(&x.scale(&lk).unwrap(), &p, c)?;
            if v != &lk * x.diameter() / rat(2) {
                return Err(format!("space {t}, k={k}"));
            }
            if prev.as_ref().is_some_and(|pv| v >= *pv) {
                return Err(format!("space {t}: not decreasing at k={k}"));
            }
            prev = Some(v);
        }
    }
    Ok("10 spaces, k = 0..10".into())
}
