//! Bi-total relations between two finite point sets and their distortion.

use num_traits::Zero;

use crate::exact::Rational;
use crate::metric::FiniteMetricSpace;

/// Hard limit on `n * m` for exhaustive enumeration.
pub const EXHAUSTIVE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GhError {
    #[error("correspondence is {n}x{m} but the spaces have {x} and {y} points")]
    SizeMismatch { n: usize, m: usize, x: usize, y: usize },
    #[error("relation is not bi-total: {side} point {index} is unmatched")]
    NotBiTotal { side: Side, index: usize },
    #[error("pair ({0}, {1}) is out of range")]
    PairOutOfRange(usize, usize),
    #[error("instance too large: {what} = {got} exceeds the cap {cap}")]
    TooLarge {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("search exceeded the node limit of {0}")]
    NodeLimit(u64),
}

impl GhError {
    pub fn kind(&self) -> &'static str {
        match self {
            GhError::SizeMismatch { .. } => "SizeMismatch",
            GhError::NotBiTotal { .. } => "NotBiTotal",
            GhError::PairOutOfRange(..) => "PairOutOfRange",
            GhError::TooLarge { .. } => "TooLarge",
            GhError::NodeLimit(_) => "NodeLimit",
        }
    }

    /// Resource-limit errors, as opposed to malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, GhError::TooLarge { .. } | GhError::NodeLimit(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A bi-total relation `R ⊆ {0..n} × {0..m}`; pairs are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Correspondence {
    n: usize,
    m: usize,
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(n: usize, m: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self, GhError> {
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= n || j >= m) {
            return Err(GhError::PairOutOfRange(i, j));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut left = vec![false; n];
        let mut right = vec![false; m];
        for &(i, j) in &pairs {
            left[i] = true;
            right[j] = true;
        }
        if let Some(index) = left.iter().position(|&b| !b) {
            return Err(GhError::NotBiTotal {
                side: Side::Left,
                index,
            });
        }
        if let Some(index) = right.iter().position(|&b| !b) {
            return Err(GhError::NotBiTotal {
                side: Side::Right,
                index,
            });
        }
        Ok(Correspondence { n, m, pairs })
    }

    /// Builds the relation where left point `i` is related to the right
    /// points in bitmask `masks[i]`.
    pub fn from_masks(m: usize, masks: &[u32]) -> Result<Self, GhError> {
        let pairs = masks
            .iter()
            .enumerate()
            .flat_map(|(i, &mask)| (0..m).filter(move |&j| mask >> j & 1 == 1).map(move |j| (i, j)))
            .collect();
        Self::new(masks.len(), m, pairs)
    }

    pub fn identity(n: usize) -> Self {
        Correspondence {
            n,
            m: n,
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn full(n: usize, m: usize) -> Self {
        Correspondence {
            n,
            m,
            pairs: (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect(),
        }
    }

    pub fn left_len(&self) -> usize {
        self.n
    }

    pub fn right_len(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.binary_search(&(i, j)).is_ok()
    }

    /// `R(x)`: right points related to left point `i`.
    pub fn image(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().filter(move |p| p.0 == i).map(|p| p.1)
    }

    pub fn transpose(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(i, j)| (j, i)).collect();
        pairs.sort_unstable();
        Correspondence {
            n: self.m,
            m: self.n,
            pairs,
        }
    }

    /// Relational composition `self ; other`.
    pub fn compose(&self, other: &Correspondence) -> Result<Self, GhError> {
        if self.m != other.n {
            return Err(GhError::SizeMismatch {
                n: other.n,
                m: other.m,
                x: self.m,
                y: other.m,
            });
        }
        let pairs = self
            .pairs
            .iter()
            .flat_map(|&(i, j)| other.image(j).map(move |k| (i, k)))
            .collect();
        Self::new(self.n, other.m, pairs)
    }

    /// `dis R`: the largest `| |xx'| − |yy'| |` over pairs `(x,y), (x',y') ∈ R`.
    pub fn distortion(
        &self,
        x: &FiniteMetricSpace,
        y: &FiniteMetricSpace,
    ) -> Result<Rational, GhError> {
        if x.len() != self.n || y.len() != self.m {
            return Err(GhError::SizeMismatch {
                n: self.n,
                m: self.m,
                x: x.len(),
                y: y.len(),
            });
        }
        let mut worst = Rational::zero();
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            for &(k, l) in &self.pairs[a + 1..] {
                let d = x.dist(i, k) - y.dist(j, l);
                let d = if d < Rational::zero() { -d } else { d };
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }
}

/// Every bi-total relation between `n` and `m` points, exactly once.
///
/// Relations are visited in increasing order of their bitmask, where pair
/// `(i, j)` occupies bit `i * m + j`.
pub fn enumerate_correspondences(
    n: usize,
    m: usize,
) -> Result<impl Iterator<Item = Correspondence>, GhError> {
    enumerate_masks(n, m).map(|it| {
        it.map(move |mask| {
            let pairs = (0..n * m)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b / m, b % m))
                .collect();
            Correspondence { n, m, pairs }
        })
    })
}

/// Raw bitmask form of [`enumerate_correspondences`].
pub(crate) fn enumerate_masks(n: usize, m: usize) -> Result<impl Iterator<Item = u32>, GhError> {
    let cells = n * m;
    if cells > EXHAUSTIVE_CAP {
        return Err(GhError::TooLarge {
            what: "n*m",
            got: cells,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let row = (1u32 << m) - 1;
    let col: u32 = (0..n).map(|i| 1u32 << (i * m)).sum();
    Ok((1u32..(1u32 << cells)).filter(move |&mask| {
        (0..n).all(|i| mask >> (i * m) & row != 0) && (0..m).all(|j| mask & (col << j) != 0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn two(d: i64) -> FiniteMetricSpace {
        FiniteMetricSpace::from_real_points(&[rat(0), rat(d)]).unwrap()
    }

    #[test]
    fn construction_checks_totality() {
        assert_eq!(
            Correspondence::new(2, 2, vec![(0, 0), (0, 1)]),
            Err(GhError::NotBiTotal {
                side: Side::Left,
                index: 1
            })
        );
        assert_eq!(
            Correspondence::new(2, 2, vec![(0, 0), (1, 0)]),
            Err(GhError::NotBiTotal {
                side: Side::Right,
                index: 1
            })
        );
        assert_eq!(
            Correspondence::new(1, 1, vec![(0, 3)]),
            Err(GhError::PairOutOfRange(0, 3))
        );
    }

    #[test]
    fn distortion_examples() {
        let x = two(3);
        let y = two(1);
        assert_eq!(Correspondence::identity(2).distortion(&x, &x).unwrap(), rat(0));
        assert_eq!(Correspondence::identity(2).distortion(&x, &y).unwrap(), rat(2));
        assert_eq!(Correspondence::full(2, 2).distortion(&x, &y).unwrap(), rat(3));
        assert!(matches!(
            Correspondence::identity(3).distortion(&x, &y),
            Err(GhError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_correspondences(1, 1).unwrap().count(), 1);
        assert_eq!(enumerate_correspondences(2, 1).unwrap().count(), 1);
        assert_eq!(enumerate_correspondences(2, 2).unwrap().count(), 7);
        // Counts from an independent brute-force filter over all subsets.
        assert_eq!(enumerate_correspondences(2, 3).unwrap().count(), 25);
        assert_eq!(enumerate_correspondences(3, 3).unwrap().count(), 265);
        assert!(matches!(
            enumerate_correspondences(3, 5),
            Err(GhError::TooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_is_distinct_and_valid() {
        let all: Vec<_> = enumerate_correspondences(3, 2).unwrap().collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        for r in &all {
            assert!(Correspondence::new(3, 2, r.pairs().to_vec()).is_ok());
        }
    }

    #[test]
    fn masks_and_transpose() {
        let r = Correspondence::from_masks(3, &[0b011, 0b100]).unwrap();
        assert_eq!(r.pairs(), &[(0, 0), (0, 1), (1, 2)]);
        let t = r.transpose();
        assert_eq!(t.pairs(), &[(0, 0), (1, 0), (2, 1)]);
        assert_eq!(t.transpose(), r);
        assert_eq!(r.image(0).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn composition() {
        let r = Correspondence::new(2, 2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(r.compose(&r).unwrap(), Correspondence::identity(2));
    }
}
