//! Finite metric spaces with exact rational distances.
//!
//! Points are anonymous labels `0..n`. A [`FiniteMetricSpace`] can only be
//! obtained through [`FiniteMetricSpace::validate`] (or constructors that are
//! valid by construction), so every value in circulation satisfies the metric
//! axioms with strict positivity off the diagonal.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{format_rational, rational_from_json, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("matrix is empty; a metric space needs at least one point")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("nonzero diagonal entry at ({0}, {0})")]
    NonzeroDiagonal(usize),
    #[error("asymmetric entries at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("zero distance between distinct points ({0}, {1})")]
    ZeroOffDiagonal(usize, usize),
    #[error("triangle inequality violated: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),
    #[error("scaling coefficient must be positive")]
    NonPositiveLambda,
    #[error("points are not strictly increasing at index {0}")]
    NotStrictlyIncreasing(usize),
    #[error("subset is empty")]
    EmptySet,
    #[error("index {index} out of range for a {n}-point space")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("field `n` = {declared} disagrees with the {actual}x{actual} matrix")]
    CountMismatch { declared: usize, actual: usize },
    #[error("bad entry at ({row}, {col}): {reason}")]
    BadEntry { row: usize, col: usize, reason: String },
}

impl MetricError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            MetricError::Empty => "Empty",
            MetricError::NotSquare { .. } => "NotSquare",
            MetricError::NegativeEntry(..) => "NegativeEntry",
            MetricError::NonzeroDiagonal(_) => "NonzeroDiagonal",
            MetricError::Asymmetric(..) => "Asymmetric",
            MetricError::ZeroOffDiagonal(..) => "ZeroOffDiagonal",
            MetricError::TriangleViolation(..) => "TriangleViolation",
            MetricError::NonPositiveLambda => "NonPositiveLambda",
            MetricError::NotStrictlyIncreasing(_) => "NotStrictlyIncreasing",
            MetricError::EmptySet => "EmptySet",
            MetricError::IndexOutOfRange { .. } => "IndexOutOfRange",
            MetricError::CountMismatch { .. } => "CountMismatch",
            MetricError::BadEntry { .. } => "BadEntry",
        }
    }
}

/// A validated finite metric space; `dist` is stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<Rational>,
}

impl FiniteMetricSpace {
    /// Checks the metric axioms and returns the space, or the first violation.
    ///
    /// Entry-wise axioms are checked over `(i, j)` in lexicographic order,
    /// then the triangle inequality over `(i, j, k)` in lexicographic order.
    pub fn validate(matrix: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let n = matrix.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let d = &matrix[i][j];
                if d.is_negative() {
                    return Err(MetricError::NegativeEntry(i, j));
                }
                if i == j {
                    if !d.is_zero() {
                        return Err(MetricError::NonzeroDiagonal(i));
                    }
                    continue;
                }
                if *d != matrix[j][i] {
                    return Err(MetricError::Asymmetric(i.min(j), i.max(j)));
                }
                if d.is_zero() {
                    return Err(MetricError::ZeroOffDiagonal(i.min(j), i.max(j)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if matrix[i][k] > &matrix[i][j] + &matrix[j][k] {
                        return Err(MetricError::TriangleViolation(i, j, k));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace {
            n,
            dist: matrix.into_iter().flatten().collect(),
        })
    }

    /// The one-point space.
    pub fn point() -> Self {
        FiniteMetricSpace {
            n: 1,
            dist: vec![Rational::zero()],
        }
    }

    /// Metric induced from the real line on a strictly increasing list.
    pub fn from_real_points(xs: &[Rational]) -> Result<Self, MetricError> {
        if xs.is_empty() {
            return Err(MetricError::Empty);
        }
        if let Some(i) = xs.windows(2).position(|w| w[0] >= w[1]) {
            return Err(MetricError::NotStrictlyIncreasing(i + 1));
        }
        let n = xs.len();
        let mut dist = Vec::with_capacity(n * n);
        for a in xs {
            for b in xs {
                dist.push((a - b).abs());
            }
        }
        Ok(FiniteMetricSpace { n, dist })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.dist.chunks(self.n)
    }

    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Maximum pairwise distance; zero for the one-point space.
    pub fn diameter(&self) -> Rational {
        self.dist.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest distance from point `i` to any other point.
    pub fn eccentricity(&self, i: usize) -> Rational {
        self.rows()
            .nth(i)
            .and_then(|r| r.iter().max().cloned())
            .unwrap_or_else(Rational::zero)
    }

    /// The similarity `X ↦ λX`.
    pub fn scale(&self, lambda: &Rational) -> Result<Self, MetricError> {
        if !lambda.is_positive() {
            return Err(MetricError::NonPositiveLambda);
        }
        Ok(FiniteMetricSpace {
            n: self.n,
            dist: self.dist.iter().map(|d| d * lambda).collect(),
        })
    }

    /// Like [`scale`](Self::scale) but also accepts `λ = 0`, which collapses
    /// the (bounded) space to a single point.
    pub fn scale_or_collapse(&self, lambda: &Rational) -> Result<Self, MetricError> {
        if lambda.is_zero() {
            Ok(Self::point())
        } else {
            self.scale(lambda)
        }
    }

    /// Induced subspace on `indices`, in the given order.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self, MetricError> {
        if indices.is_empty() {
            return Err(MetricError::EmptySet);
        }
        self.check_indices(indices)?;
        let mut matrix = Vec::with_capacity(indices.len());
        for &i in indices {
            matrix.push(indices.iter().map(|&j| self.dist(i, j).clone()).collect());
        }
        // Distinct indices of a metric space give a metric space.
        Self::validate(matrix)
    }

    /// Relabels points: point `k` of the result is point `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, MetricError> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(MetricError::CountMismatch {
                declared: perm.len(),
                actual: self.n,
            });
        }
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(MetricError::IndexOutOfRange {
                    index: p,
                    n: self.n,
                });
            }
        }
        let mut dist = Vec::with_capacity(self.n * self.n);
        for &a in perm {
            for &b in perm {
                dist.push(self.dist(a, b).clone());
            }
        }
        Ok(FiniteMetricSpace { n: self.n, dist })
    }

    fn check_indices(&self, indices: &[usize]) -> Result<(), MetricError> {
        match indices.iter().find(|&&i| i >= self.n) {
            Some(&index) => Err(MetricError::IndexOutOfRange { index, n: self.n }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for FiniteMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        f.debug_struct("FiniteMetricSpace")
            .field("n", &self.n)
            .field("dist", &rows)
            .finish()
    }
}

/// Two non-empty subsets of a common ambient space.
#[derive(Debug, Clone)]
pub struct SubsetPair<'a> {
    ambient: &'a FiniteMetricSpace,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl<'a> SubsetPair<'a> {
    pub fn new(
        ambient: &'a FiniteMetricSpace,
        mut a: Vec<usize>,
        mut b: Vec<usize>,
    ) -> Result<Self, MetricError> {
        if a.is_empty() || b.is_empty() {
            return Err(MetricError::EmptySet);
        }
        ambient.check_indices(&a)?;
        ambient.check_indices(&b)?;
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        Ok(SubsetPair { ambient, a, b })
    }

    pub fn ambient(&self) -> &FiniteMetricSpace {
        self.ambient
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// Hausdorff distance via the directed max-min formula.
    pub fn hausdorff_distance(&self) -> Rational {
        let directed = |from: &[usize], to: &[usize]| -> Rational {
            from.iter()
                .map(|&x| {
                    to.iter()
                        .map(|&y| self.ambient.dist(x, y))
                        .min()
                        .expect("non-empty")
                        .clone()
                })
                .max()
                .expect("non-empty")
        };
        directed(&self.a, &self.b).max(directed(&self.b, &self.a))
    }
}

/// Wire format: `{"n": <int>, "dist": [["p/q" | int, ...], ...]}`.
#[derive(Serialize)]
struct SpaceOut {
    n: usize,
    dist: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct SpaceIn {
    n: usize,
    dist: Vec<Vec<serde_json::Value>>,
}

impl FiniteMetricSpace {
    /// Parses and validates the JSON wire format.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, MetricError> {
        let raw: SpaceIn = serde_json::from_value(v.clone()).map_err(|e| MetricError::BadEntry {
            row: 0,
            col: 0,
            reason: e.to_string(),
        })?;
        let mut matrix = Vec::with_capacity(raw.dist.len());
        for (row, r) in raw.dist.iter().enumerate() {
            let mut out = Vec::with_capacity(r.len());
            for (col, e) in r.iter().enumerate() {
                out.push(rational_from_json(e).map_err(|e| MetricError::BadEntry {
                    row,
                    col,
                    reason: e.to_string(),
                })?);
            }
            matrix.push(out);
        }
        if raw.n != matrix.len() {
            return Err(MetricError::CountMismatch {
                declared: raw.n,
                actual: matrix.len(),
            });
        }
        Self::validate(matrix)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("space serializes")
    }
}

impl Serialize for FiniteMetricSpace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SpaceOut {
            n: self.n,
            dist: self
                .rows()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteMetricSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn line(xs: &[i64]) -> FiniteMetricSpace {
        let pts: Vec<_> = xs.iter().map(|&x| rat(x)).collect();
        FiniteMetricSpace::from_real_points(&pts).unwrap()
    }

    #[test]
    fn validate_examples() {
        let two = FiniteMetricSpace::validate(m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(
            FiniteMetricSpace::validate(m(&[&[0, 1], &[2, 0]])),
            Err(MetricError::Asymmetric(0, 1))
        );
        assert_eq!(
            FiniteMetricSpace::validate(m(&[&[0, 1, 3], &[1, 0, 1], &[3, 1, 0]])),
            Err(MetricError::TriangleViolation(0, 1, 2))
        );
    }

    #[test]
    fn validate_error_paths() {
        assert_eq!(FiniteMetricSpace::validate(vec![]), Err(MetricError::Empty));
        assert!(matches!(
            FiniteMetricSpace::validate(m(&[&[0, 1], &[1]])),
            Err(MetricError::NotSquare { row: 1, .. })
        ));
        assert_eq!(
            FiniteMetricSpace::validate(m(&[&[0, -1], &[-1, 0]])),
            Err(MetricError::NegativeEntry(0, 1))
        );
        assert_eq!(
            FiniteMetricSpace::validate(m(&[&[0, 1], &[1, 2]])),
            Err(MetricError::NonzeroDiagonal(1))
        );
        assert_eq!(
            FiniteMetricSpace::validate(m(&[&[0, 0], &[0, 0]])),
            Err(MetricError::ZeroOffDiagonal(0, 1))
        );
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(FiniteMetricSpace::point().diameter(), rat(0));
        let two = FiniteMetricSpace::validate(m(&[&[0, 5], &[5, 0]])).unwrap();
        assert_eq!(two.diameter(), rat(5));
        assert_eq!(line(&[1, 4, 9]).diameter(), rat(8));
    }

    #[test]
    fn scale_examples() {
        let x = line(&[0, 2, 7]);
        assert_eq!(x.scale(&rat(1)).unwrap(), x);
        assert_eq!(x.scale(&rat(3)).unwrap().diameter(), rat(21));
        let back = x.scale(&rat(2)).unwrap().scale(&ratio(1, 2)).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.scale(&rat(0)), Err(MetricError::NonPositiveLambda));
        assert_eq!(x.scale(&rat(-2)), Err(MetricError::NonPositiveLambda));
        assert_eq!(x.scale_or_collapse(&rat(0)).unwrap(), FiniteMetricSpace::point());
    }

    #[test]
    fn real_points_examples() {
        assert_eq!(line(&[0]), FiniteMetricSpace::point());
        assert_eq!(
            line(&[3, 9, 27]).to_matrix(),
            m(&[&[0, 6, 24], &[6, 0, 18], &[24, 18, 0]])
        );
        assert_eq!(line(&[0, 1]).to_matrix(), m(&[&[0, 1], &[1, 0]]));
        assert_eq!(
            FiniteMetricSpace::from_real_points(&[rat(1), rat(1)]),
            Err(MetricError::NotStrictlyIncreasing(1))
        );
    }

    #[test]
    fn hausdorff_examples() {
        let amb = line(&[0, 1, 10]);
        let same = SubsetPair::new(&amb, vec![0, 2], vec![2, 0]).unwrap();
        assert_eq!(same.hausdorff_distance(), rat(0));
        let p = SubsetPair::new(&amb, vec![0], vec![1, 2]).unwrap();
        assert_eq!(p.hausdorff_distance(), rat(10));
        let p = SubsetPair::new(&amb, vec![0, 2], vec![1, 2]).unwrap();
        assert_eq!(p.hausdorff_distance(), rat(1));
        assert_eq!(
            SubsetPair::new(&amb, vec![], vec![1]).unwrap_err(),
            MetricError::EmptySet
        );
    }

    #[test]
    fn json_format() {
        let x = FiniteMetricSpace::validate(vec![
            vec![rat(0), ratio(3, 2)],
            vec![ratio(6, 4), rat(0)],
        ])
        .unwrap();
        let v = x.to_json_value();
        assert_eq!(v, serde_json::json!({"n": 2, "dist": [["0", "3/2"], ["3/2", "0"]]}));
        let back = FiniteMetricSpace::from_json_value(&serde_json::json!({
            "n": 2, "dist": [[0, "3/2"], ["6/4", 0]]
        }))
        .unwrap();
        assert_eq!(back, x);
        assert_eq!(
            FiniteMetricSpace::from_json_value(&serde_json::json!({"n": 3, "dist": [[0]]})),
            Err(MetricError::CountMismatch { declared: 3, actual: 1 })
        );
    }

    #[test]
    fn permutation_and_subspace() {
        let x = line(&[0, 1, 10]);
        let p = x.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.dist(0, 1), &rat(10));
        assert!(x.permuted(&[0, 0, 1]).is_err());
        let s = x.subspace(&[2, 1]).unwrap();
        assert_eq!(s.to_matrix(), m(&[&[0, 9], &[9, 0]]));
    }
}
