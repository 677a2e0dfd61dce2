//! Finite certificates about unbounded subsets of the line.
//!
//! Two unbounded sequences are at infinite GH distance as soon as
//! `Δ(r)`, the smallest mismatch `| |xx'| − |yy'| |` over pairs far from the
//! base points, grows without bound. Everything here works on a finite index
//! window `1..=M`, so a computed minimum is only an upper bound for the
//! window-free infimum; the exact structural lower bounds (the prime-power
//! drop) are checked alongside it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::{Correspondence, GhError};
use crate::exact::{format_rational, serde_bigint, serde_opt_rational, serde_rational, Rational};
use crate::metric::FiniteMetricSpace;
use crate::sequence::{is_prime, Exponent, RealSequenceSpace, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CloudError {
    #[error("window {window} is too small; at least {min} is required")]
    WindowTooSmall { window: usize, min: usize },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("bad window: {0}")]
    BadWindow(String),
    #[error("exponent gaps do not strictly increase at n = {0}")]
    GapsNotGrowing(usize),
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

impl CloudError {
    pub fn kind(&self) -> &'static str {
        match self {
            CloudError::WindowTooSmall { .. } => "WindowTooSmall",
            CloudError::NotOddPrime(_) => "NotOddPrime",
            CloudError::BadWindow(_) => "BadWindow",
            CloudError::GapsNotGrowing(_) => "GapsNotGrowing",
            CloudError::NonPositiveLambda(_) => "NonPositiveLambda",
            CloudError::Sequence(e) => e.kind(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaRow {
    pub s: usize,
    #[serde(with = "serde_rational")]
    pub min_abs_delta: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaCurve {
    pub window: usize,
    pub base_x: usize,
    pub base_y: usize,
    pub rows: Vec<DeltaRow>,
}

/// Sorted positive differences `x_n − x_k` with `M ≥ n > k ≥ s`.
fn differences(xs: &[Rational], s: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    for n in s..=xs.len() {
        for k in s..n {
            out.push(&xs[n - 1] - &xs[k - 1]);
        }
    }
    out.sort_unstable();
    out
}

/// Smallest `|a − b|` over `a ∈ xs`, `b ∈ ys`, both sorted and non-empty.
fn min_gap(xs: &[Rational], ys: &[Rational]) -> Rational {
    let (mut i, mut j) = (0, 0);
    let mut best = (&xs[0] - &ys[0]).abs();
    while i < xs.len() && j < ys.len() {
        let d = &xs[i] - &ys[j];
        if d.abs() < best {
            best = d.abs();
        }
        if best.is_zero() {
            break;
        }
        if d.is_negative() {
            i += 1;
        } else {
            j += 1;
        }
    }
    best
}

/// `Δ` restricted to the window, base points `x₁` and `y₁`.
pub fn delta_curve(
    x: &RealSequenceSpace,
    y: &RealSequenceSpace,
    window: usize,
) -> Result<DeltaCurve, CloudError> {
    delta_curve_with_base(x, y, window, 1, 1)
}

/// For each `s`, the exact minimum of `|(x_n − x_k) − (y_m − y_l)|` over
/// `M ≥ n > k ≥ s`, `M ≥ m > l ≥ s`. Rows start past both base indices;
/// on an increasing sequence, large index is the same as far from the base.
pub fn delta_curve_with_base(
    x: &RealSequenceSpace,
    y: &RealSequenceSpace,
    window: usize,
    base_x: usize,
    base_y: usize,
) -> Result<DeltaCurve, CloudError> {
    if window < 4 {
        return Err(CloudError::WindowTooSmall { window, min: 4 });
    }
    let first = 2.max(base_x.max(base_y) + 1);
    if base_x == 0 || base_y == 0 || first > window - 1 {
        return Err(CloudError::BadWindow(format!(
            "base indices ({base_x}, {base_y}) leave no rows below {window}"
        )));
    }
    let xs = x.window(window)?;
    let ys = y.window(window)?;
    let rows = (first..window)
        .into_par_iter()
        .map(|s| DeltaRow {
            s,
            min_abs_delta: min_gap(&differences(&xs, s), &differences(&ys, s)),
        })
        .collect();
    Ok(DeltaCurve {
        window,
        base_x,
        base_y,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DropLevel {
    pub s: usize,
    #[serde(with = "serde_bigint")]
    pub min_abs_delta: BigInt,
    #[serde(with = "serde_bigint")]
    pub bound: BigInt,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DropReport {
    pub prime: u64,
    pub window: usize,
    pub zero_found: bool,
    /// `(m, l, n, k)` with `δ = 0`, if any.
    pub zero_witness: Option<(usize, usize, usize, usize)>,
    pub min_delta_by_s: Vec<DropLevel>,
    pub bound_holds: bool,
}

/// Scans `δ = p^m − p^l − 2pⁿ + 2p^k` over all `M ≥ m > l ≥ 1`,
/// `M ≥ n > k ≥ 1`, grouping by the level `s = min(l, k)`.
///
/// Each `δ` is a multiple of `p^s`, so `δ ≠ 0` forces `|δ| ≥ p^s`.
pub fn drop_witness(p: u64, window: usize) -> Result<DropReport, CloudError> {
    if p == 2 || !is_prime(p) {
        return Err(CloudError::NotOddPrime(p));
    }
    if window < 2 {
        return Err(CloudError::WindowTooSmall { window, min: 2 });
    }
    let pow: Vec<BigInt> = (0..=window)
        .map(|e| num_traits::pow(BigInt::from(p), e))
        .collect();
    let pairs: Vec<(usize, usize)> = (1..=window)
        .flat_map(|hi| (1..hi).map(move |lo| (hi, lo)))
        .collect();

    // Per level: smallest |δ| and the first zero in scan order.
    type Acc = (Vec<Option<BigInt>>, Option<(usize, usize, usize, usize)>);
    let merge = |mut a: Acc, b: Acc| -> Acc {
        for (x, y) in a.0.iter_mut().zip(b.0) {
            if let Some(y) = y {
                if x.as_ref().is_none_or(|v| y < *v) {
                    *x = Some(y);
                }
            }
        }
        a.1 = match (a.1, b.1) {
            (Some(u), Some(v)) => Some(u.min(v)),
            (u, v) => u.or(v),
        };
        a
    };
    let (mins, zero) = pairs
        .par_iter()
        .map(|&(m, l)| {
            let mut acc: Acc = (vec![None; window], None);
            let x = &pow[m] - &pow[l];
            for &(n, k) in &pairs {
                let y: BigInt = (&pow[n] - &pow[k]) * 2;
                let delta = (&x - y).abs();
                if delta.is_zero() && acc.1.is_none() {
                    acc.1 = Some((m, l, n, k));
                }
                let s = l.min(k);
                if acc.0[s].as_ref().is_none_or(|v| delta < *v) {
                    acc.0[s] = Some(delta);
                }
            }
            acc
        })
        .reduce(|| (vec![None; window], None), merge);

    let min_delta_by_s: Vec<DropLevel> = mins
        .into_iter()
        .enumerate()
        .filter_map(|(s, v)| {
            v.map(|min_abs_delta| DropLevel {
                s,
                holds: min_abs_delta >= pow[s],
                bound: pow[s].clone(),
                min_abs_delta,
            })
        })
        .collect();
    Ok(DropReport {
        prime: p,
        window,
        zero_found: zero.is_some(),
        zero_witness: zero,
        bound_holds: min_delta_by_s.iter().all(|l| l.holds),
        min_delta_by_s,
    })
}

/// A solution `λ = (x_n − x_k) / (x_m − x_l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Representation {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub l: usize,
}

fn check_lambda(lambda: &Rational) -> Result<(), CloudError> {
    if !lambda.is_positive() {
        return Err(CloudError::NonPositiveLambda(format_rational(lambda)));
    }
    Ok(())
}

fn check_window(x: &RealSequenceSpace, window: usize, floor: usize) -> Result<(), CloudError> {
    if window < floor + 2 {
        return Err(CloudError::BadWindow(format!(
            "no index pairs in ({floor}, {window}]"
        )));
    }
    if let Some(len) = x.max_len() {
        if window > len {
            return Err(CloudError::BadWindow(format!(
                "window {window} exceeds the {len} available elements"
            )));
        }
    }
    Ok(())
}

/// Every `(n, k, m, l)` with `M ≥ n > k > floor`, `M ≥ m > l > floor` and
/// `x_n − x_k = λ(x_m − x_l)`, in lexicographic order.
///
/// An empty answer is evidence, not proof, that `λ` is outside the stabilizer.
pub fn representation_search(
    lambda: &Rational,
    x: &RealSequenceSpace,
    window: usize,
    floor: usize,
) -> Result<Vec<Representation>, CloudError> {
    check_lambda(lambda)?;
    check_window(x, window, floor)?;
    let xs = x.window(window)?;
    let mut by_value: HashMap<Rational, Vec<(usize, usize)>> = HashMap::new();
    for n in floor + 1..=window {
        for k in floor + 1..n {
            by_value
                .entry(&xs[n - 1] - &xs[k - 1])
                .or_default()
                .push((n, k));
        }
    }
    let mut out = Vec::new();
    for m in floor + 1..=window {
        for l in floor + 1..m {
            let target = (&xs[m - 1] - &xs[l - 1]) * lambda;
            if let Some(hits) = by_value.get(&target) {
                out.extend(hits.iter().map(|&(n, k)| Representation { n, k, m, l }));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Range of the ratio over one of the cases `n = m`, `n < m`, `n > m`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CaseRange {
    pub count: usize,
    #[serde(with = "serde_opt_rational")]
    pub min: Option<Rational>,
    #[serde(with = "serde_opt_rational")]
    pub max: Option<Rational>,
}

impl CaseRange {
    fn add(&mut self, v: &Rational) {
        self.count += 1;
        if self.min.as_ref().is_none_or(|m| v < m) {
            self.min = Some(v.clone());
        }
        if self.max.as_ref().is_none_or(|m| v > m) {
            self.max = Some(v.clone());
        }
    }

    fn absorb(&mut self, other: &CaseRange) {
        if let (Some(lo), Some(hi)) = (&other.min, &other.max) {
            let count = self.count + other.count;
            self.add(lo);
            self.add(hi);
            self.count = count;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CaseRanges {
    /// `n = m`, excluding the identical pairs `k = l` whose ratio is 1.
    pub n_eq_m: CaseRange,
    pub n_lt_m: CaseRange,
    pub n_gt_m: CaseRange,
}

impl CaseRanges {
    fn absorb(&mut self, other: &CaseRanges) {
        self.n_eq_m.absorb(&other.n_eq_m);
        self.n_lt_m.absorb(&other.n_lt_m);
        self.n_gt_m.absorb(&other.n_gt_m);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FloorRow {
    pub floor: usize,
    #[serde(flatten)]
    pub ranges: CaseRanges,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapScanReport {
    #[serde(with = "serde_rational")]
    pub lambda: Rational,
    pub window: usize,
    pub floor: usize,
    /// Ranges over all tuples with indices above `floor`.
    pub cases: CaseRanges,
    /// The same ranges for every larger floor, showing the drift toward
    /// 1, 0 and ∞ respectively.
    pub by_floor: Vec<FloorRow>,
    pub solutions: Vec<Representation>,
    pub absent_in_window: bool,
}

/// Checks that `φ(n+1) − φ(n)` strictly increases on `1..=window`.
pub fn check_gaps(phi: &Exponent, window: usize) -> Result<(), CloudError> {
    let values: Vec<u64> = (1..=window)
        .map(|n| phi.apply(n))
        .collect::<Option<_>>()
        .ok_or_else(|| CloudError::BadWindow(format!("exponent list shorter than {window}")))?;
    for n in 2..values.len() {
        if values[n] - values[n - 1] <= values[n - 1] - values[n - 2] {
            return Err(CloudError::GapsNotGrowing(n));
        }
    }
    Ok(())
}

/// Evaluates every ratio `(q^{φ(n)} − q^{φ(k)}) / (q^{φ(m)} − q^{φ(l)})`
/// with indices in `(floor, window]`, split by the sign of `n − m`.
pub fn gap_scan(
    phi: &Exponent,
    q: &Rational,
    lambda: &Rational,
    window: usize,
    floor: usize,
) -> Result<GapScanReport, CloudError> {
    check_lambda(lambda)?;
    let x = RealSequenceSpace::geometric(q.clone(), phi.clone())?;
    check_window(&x, window, floor)?;
    check_gaps(phi, window)?;
    let xs = x.window(window)?;
    let pairs: Vec<(usize, usize)> = (floor + 1..=window)
        .flat_map(|n| (floor + 1..n).map(move |k| (n, k)))
        .collect();

    // Bucket by the smallest index so that every floor is a suffix union.
    let mut buckets = vec![CaseRanges::default(); window + 1];
    let mut solutions = Vec::new();
    for &(n, k) in &pairs {
        let top = &xs[n - 1] - &xs[k - 1];
        for &(m, l) in &pairs {
            let ratio = &top / (&xs[m - 1] - &xs[l - 1]);
            if ratio == *lambda {
                solutions.push(Representation { n, k, m, l });
            }
            let b = &mut buckets[k.min(l)];
            match n.cmp(&m) {
                std::cmp::Ordering::Equal if k == l => {}
                std::cmp::Ordering::Equal => b.n_eq_m.add(&ratio),
                std::cmp::Ordering::Less => b.n_lt_m.add(&ratio),
                std::cmp::Ordering::Greater => b.n_gt_m.add(&ratio),
            }
        }
    }
    solutions.sort_unstable();

    let mut by_floor = Vec::new();
    let mut acc = CaseRanges::default();
    for f in (floor..window - 1).rev() {
        acc.absorb(&buckets[f + 1]);
        by_floor.push(FloorRow {
            floor: f,
            ranges: acc.clone(),
        });
    }
    by_floor.reverse();
    Ok(GapScanReport {
        lambda: lambda.clone(),
        window,
        floor,
        cases: acc,
        by_floor,
        absent_in_window: solutions.is_empty(),
        solutions,
    })
}

/// Floating-point exploration of the same equation for real `q` and `λ`.
///
/// Ratios are compared in log space; tuples within `tol` of `ln λ` are
/// reported. Not exact, and never used as a certificate.
pub fn near_representations_f64(
    phi: &Exponent,
    q: f64,
    lambda: f64,
    window: usize,
    floor: usize,
    tol: f64,
) -> Result<Vec<Representation>, CloudError> {
    if !(q > 1.0) {
        return Err(CloudError::Sequence(SequenceError::BaseNotAboveOne(q.to_string())));
    }
    if !(lambda > 0.0) {
        return Err(CloudError::NonPositiveLambda(lambda.to_string()));
    }
    if window < floor + 2 {
        return Err(CloudError::BadWindow(format!("no index pairs in ({floor}, {window}]")));
    }
    let e: Vec<f64> = (1..=window)
        .map(|n| phi.apply(n).map(|v| v as f64))
        .collect::<Option<_>>()
        .ok_or_else(|| CloudError::BadWindow(format!("exponent list shorter than {window}")))?;
    let lnq = q.ln();
    // ln(q^a − q^b) = a ln q + ln(1 − q^{b−a}) for a > b.
    let ln_diff = |a: usize, b: usize| e[a - 1] * lnq + (-(lnq * (e[b - 1] - e[a - 1])).exp()).ln_1p();
    let target = lambda.ln();
    let mut out = Vec::new();
    for n in floor + 1..=window {
        for k in floor + 1..n {
            for m in floor + 1..=window {
                for l in floor + 1..m {
                    if (ln_diff(n, k) - ln_diff(m, l) - target).abs() <= tol {
                        out.push(Representation { n, k, m, l });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// First pair `(x, y) ∈ R`, in pair order, with both points at distance at
/// least `r` from their base points.
pub fn far_pair(
    r: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    x0: usize,
    y0: usize,
    radius: &Rational,
) -> Result<Option<(usize, usize)>, GhError> {
    if r.left_len() != x.len() || r.right_len() != y.len() {
        return Err(GhError::SizeMismatch {
            n: r.left_len(),
            m: r.right_len(),
            x: x.len(),
            y: y.len(),
        });
    }
    if x0 >= x.len() || y0 >= y.len() {
        return Err(GhError::PairOutOfRange(x0, y0));
    }
    Ok(r
        .pairs()
        .iter()
        .copied()
        .find(|&(a, b)| x.dist(x0, a) >= radius && y.dist(y0, b) >= radius))
}

/// `true` when `λ = 1`; used to tell the trivial diagonal family apart.
pub fn is_diagonal(rep: &Representation) -> bool {
    rep.n == rep.m && rep.k == rep.l
}
