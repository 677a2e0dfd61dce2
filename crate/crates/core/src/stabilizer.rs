//! Number theory behind the stabilizer of `X_q = {qⁿ}`.
//!
//! The rational coefficients `λ` with `λX_q` in the cloud of `X_q` are the
//! integer powers of `q`. The pieces: the gcd identity for `qⁿ − 1`, the
//! repunits `1 + q^d + … + q^{(r−1)d}`, the coprime solutions of
//! `a₁(qⁿ − 1) = a₂(qᵐ − 1)`, and the shape
//! `λ = q^α (q^{r₂d} − 1)/(q^{r₁d} − 1)` that every member must have.
//!
//! Searches over unbounded exponents take an explicit bound; a `None` is
//! only a statement about exponents within that bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{format_rational, serde_bigint, serde_rational, Rational};

/// Exponent bound used by the bounded searches when none is given.
pub const DEFAULT_BOUND: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilizerError {
    #[error("base q must be at least 2, got {0}")]
    BadBase(u64),
    #[error("{name} must be a positive integer")]
    BadExponent { name: &'static str },
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(String),
}

impl StabilizerError {
    pub fn kind(&self) -> &'static str {
        match self {
            StabilizerError::BadBase(_) => "BadBase",
            StabilizerError::BadExponent { .. } => "BadExponent",
            StabilizerError::NonPositiveLambda(_) => "NonPositiveLambda",
        }
    }
}

fn check_base(q: u64) -> Result<(), StabilizerError> {
    if q < 2 {
        return Err(StabilizerError::BadBase(q));
    }
    Ok(())
}

fn check_positive(name: &'static str, v: u64) -> Result<(), StabilizerError> {
    if v == 0 {
        return Err(StabilizerError::BadExponent { name });
    }
    Ok(())
}

fn pow(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// `q^e − 1`.
pub fn mersenne(q: u64, e: u64) -> BigInt {
    pow(q, e) - 1
}

/// `gcd(qⁿ − 1, qᵐ − 1) = q^{gcd(n, m)} − 1`.
///
/// Panics if the identity fails against the Euclidean gcd, which would mean
/// an arithmetic bug rather than bad input.
pub fn gcd_qpow(q: u64, n: u64, m: u64) -> Result<BigInt, StabilizerError> {
    check_base(q)?;
    check_positive("n", n)?;
    check_positive("m", m)?;
    let closed = mersenne(q, n.gcd(&m));
    let direct = mersenne(q, n).gcd(&mersenne(q, m));
    assert_eq!(closed, direct, "gcd identity failed for q={q}, n={n}, m={m}");
    Ok(closed)
}

/// `1 + q^d + … + q^{(r−1)d} = (q^{rd} − 1)/(q^d − 1)`.
pub fn repunit(q: u64, r: u64, d: u64) -> Result<BigInt, StabilizerError> {
    check_base(q)?;
    check_positive("r", r)?;
    check_positive("d", d)?;
    let step = pow(q, d);
    let mut term = BigInt::one();
    let mut sum = BigInt::zero();
    for _ in 0..r {
        sum += &term;
        term *= &step;
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepunitSolution {
    #[serde(with = "serde_bigint")]
    pub a1: BigInt,
    #[serde(with = "serde_bigint")]
    pub a2: BigInt,
    pub d: u64,
    pub r_n: u64,
    pub r_m: u64,
}

/// The coprime positive solution of `a₁(qⁿ − 1) = a₂(qᵐ − 1)`:
/// `a₁ = repunit(q, m/d, d)`, `a₂ = repunit(q, n/d, d)` with `d = gcd(n, m)`.
pub fn solve_repunit_equation(q: u64, n: u64, m: u64) -> Result<RepunitSolution, StabilizerError> {
    check_base(q)?;
    check_positive("n", n)?;
    check_positive("m", m)?;
    let d = n.gcd(&m);
    let (r_n, r_m) = (n / d, m / d);
    let a1 = repunit(q, r_m, d)?;
    let a2 = repunit(q, r_n, d)?;
    debug_assert_eq!(&a1 * mersenne(q, n), &a2 * mersenne(q, m));
    Ok(RepunitSolution { a1, a2, d, r_n, r_m })
}

/// `λ = q^α (q^{r₂d} − 1)/(q^{r₁d} − 1)` with `gcd(r₁, r₂) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioForm {
    pub alpha: i64,
    pub d: u64,
    pub r1: u64,
    pub r2: u64,
}

impl RatioForm {
    pub fn value(&self, q: u64) -> Rational {
        let ratio = Rational::new(mersenne(q, self.r2 * self.d), mersenne(q, self.r1 * self.d));
        ratio * crate::exact::rational_pow(&Rational::from_integer(q.into()), self.alpha)
    }
}

fn check_lambda(lambda: &Rational) -> Result<(), StabilizerError> {
    if !lambda.is_positive() {
        return Err(StabilizerError::NonPositiveLambda(format_rational(lambda)));
    }
    Ok(())
}

/// Strips factors of `q` from `v`; returns how many, or `None` if the
/// remainder is not 1.
fn log_q(mut v: BigInt, q: &BigInt) -> Option<i64> {
    let mut count = 0;
    while !v.is_one() {
        let (quot, rem) = v.div_rem(q);
        if !rem.is_zero() {
            return None;
        }
        v = quot;
        count += 1;
    }
    Some(count)
}

/// `Some(α)` iff `λ = q^α` for an integer `α` of either sign.
pub fn stabilizer_member(lambda: &Rational, q: u64) -> Result<Option<i64>, StabilizerError> {
    check_base(q)?;
    check_lambda(lambda)?;
    let qb = BigInt::from(q);
    Ok(if lambda.denom().is_one() {
        log_q(lambda.numer().clone(), &qb)
    } else if lambda.numer().is_one() {
        log_q(lambda.denom().clone(), &qb).map(|a| -a)
    } else {
        None
    })
}

/// Lexicographically least `(d, r₂, r₁, α)` with `r₁d, r₂d, |α| ≤ bound`
/// writing `λ` in the form above, if any.
pub fn ratio_form_decompose(
    lambda: &Rational,
    q: u64,
    bound: u64,
) -> Result<Option<RatioForm>, StabilizerError> {
    check_base(q)?;
    check_lambda(lambda)?;
    check_positive("bound", bound)?;
    let m: Vec<BigInt> = (0..=bound).map(|e| mersenne(q, e)).collect();
    for d in 1..=bound {
        for r2 in 1..=bound / d {
            for r1 in 1..=bound / d {
                if r1.gcd(&r2) != 1 {
                    continue;
                }
                let rho = Rational::new(m[(r2 * d) as usize].clone(), m[(r1 * d) as usize].clone());
                if let Some(alpha) = stabilizer_member(&(lambda / rho), q)? {
                    if alpha.unsigned_abs() <= bound {
                        return Ok(Some(RatioForm { alpha, d, r1, r2 }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareTestReport {
    #[serde(with = "serde_rational")]
    pub lambda: Rational,
    /// `n = m`, so `λ = 1`.
    pub trivial: bool,
    /// Least `(k, l)`, `k > l`, `k ≤ bound`, with `λ² = (q^k − 1)/(q^l − 1)`.
    pub counterexample: Option<(u64, u64)>,
    /// `true` when nothing contradicts "`λ²` of that shape forces `λ = 1`".
    pub lambda_is_one_required: bool,
    pub bound: u64,
}

/// Looks for `(k, l)` with `λ² = (q^k − 1)/(q^l − 1)` where
/// `λ = (qⁿ − 1)/(qᵐ − 1)`.
///
/// The bound is raised to at least `2·max(n, m)`. Such pairs do exist for
/// `n ≠ m` in rare cases: `q = 2, n = 2, m = 1` gives `λ² = 9 = 63/7`.
pub fn square_ratio_test(
    q: u64,
    n: u64,
    m: u64,
    bound: u64,
) -> Result<SquareTestReport, StabilizerError> {
    check_base(q)?;
    check_positive("n", n)?;
    check_positive("m", m)?;
    let bound = bound.max(2 * n).max(2 * m);
    let lambda = Rational::new(mersenne(q, n), mersenne(q, m));
    if n == m {
        return Ok(SquareTestReport {
            lambda,
            trivial: true,
            counterexample: None,
            lambda_is_one_required: true,
            bound,
        });
    }
    let top = num_traits::pow(mersenne(q, n), 2);
    let bottom = num_traits::pow(mersenne(q, m), 2);
    let ms: Vec<BigInt> = (0..=bound).map(|e| mersenne(q, e)).collect();
    let mut counterexample = None;
    'outer: for k in 2..=bound {
        let rhs = &bottom * &ms[k as usize];
        for l in 1..k {
            if &top * &ms[l as usize] == rhs {
                counterexample = Some((k, l));
                break 'outer;
            }
        }
    }
    Ok(SquareTestReport {
        lambda,
        trivial: false,
        lambda_is_one_required: counterexample.is_none(),
        counterexample,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_qpow(2, 4, 6).unwrap(), BigInt::from(3));
        assert_eq!(gcd_qpow(3, 2, 3).unwrap(), BigInt::from(2));
        assert_eq!(gcd_qpow(5, 7, 7).unwrap(), mersenne(5, 7));
        assert_eq!(gcd_qpow(1, 2, 3), Err(StabilizerError::BadBase(1)));
        assert_eq!(
            gcd_qpow(2, 0, 3),
            Err(StabilizerError::BadExponent { name: "n" })
        );
    }

    #[test]
    fn repunit_examples() {
        assert_eq!(repunit(7, 1, 5).unwrap(), BigInt::one());
        assert_eq!(repunit(2, 3, 2).unwrap(), BigInt::from(21));
        assert_eq!(repunit(3, 2, 1).unwrap(), BigInt::from(4));
    }

    #[test]
    fn repunit_equation_examples() {
        let s = solve_repunit_equation(2, 4, 6).unwrap();
        assert_eq!((s.a1, s.a2), (BigInt::from(21), BigInt::from(5)));
        let s = solve_repunit_equation(9, 5, 5).unwrap();
        assert_eq!((s.a1, s.a2), (BigInt::one(), BigInt::one()));
        let s = solve_repunit_equation(3, 2, 4).unwrap();
        assert_eq!((s.a1, s.a2), (BigInt::from(10), BigInt::one()));
    }

    #[test]
    fn member_examples() {
        assert_eq!(stabilizer_member(&rat(8), 2).unwrap(), Some(3));
        assert_eq!(stabilizer_member(&rat(1), 7).unwrap(), Some(0));
        assert_eq!(stabilizer_member(&ratio(1, 9), 3).unwrap(), Some(-2));
        assert_eq!(stabilizer_member(&ratio(3, 2), 2).unwrap(), None);
        assert_eq!(stabilizer_member(&rat(2), 3).unwrap(), None);
        assert_eq!(stabilizer_member(&rat(4), 8).unwrap(), None);
        assert!(stabilizer_member(&rat(0), 2).is_err());
    }

    #[test]
    fn ratio_form_examples() {
        let f = ratio_form_decompose(&rat(8), 2, 8).unwrap().unwrap();
        assert_eq!(f, RatioForm { alpha: 3, d: 1, r1: 1, r2: 1 });
        let f = ratio_form_decompose(&rat(5), 2, 8).unwrap().unwrap();
        assert_eq!(f, RatioForm { alpha: 0, d: 2, r1: 1, r2: 2 });
        assert_eq!(f.value(2), rat(5));
        assert_eq!(ratio_form_decompose(&ratio(4, 7), 3, 10).unwrap(), None);
    }

    #[test]
    fn square_test_examples() {
        let r = square_ratio_test(2, 3, 3, 10).unwrap();
        assert!(r.trivial && r.lambda_is_one_required);
        assert_eq!(r.lambda, rat(1));
        let r = square_ratio_test(2, 4, 2, 30).unwrap();
        assert_eq!(r.counterexample, None);
        assert!(r.lambda_is_one_required);
        let r = square_ratio_test(3, 3, 1, 24).unwrap();
        assert_eq!(r.counterexample, None);
        assert_eq!(square_ratio_test(2, 20, 1, 8).unwrap().bound, 40);
    }

    #[test]
    fn square_test_finds_the_q2_exception() {
        // 3² = (2⁶ − 1)/(2³ − 1).
        let r = square_ratio_test(2, 2, 1, 30).unwrap();
        assert_eq!(r.lambda, rat(3));
        assert_eq!(r.counterexample, Some((6, 3)));
        assert!(!r.lambda_is_one_required);
        assert_eq!(stabilizer_member(&rat(3), 2).unwrap(), None);
    }
}
