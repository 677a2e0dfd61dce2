//! Strictly increasing unbounded sequences in ℝ, used as model spaces with
//! the metric induced from the line.
//!
//! Sequences are 1-based: `x₁ < x₂ < …`. The text form accepted by
//! [`RealSequenceSpace::from_str`] is
//!
//! ```text
//! geom:q=2,phi=square       q^{n²}
//! geom:q=3/2                (3/2)^n
//! geom:q=2,phi=1;4;9;16     q^{φ(n)} with φ given explicitly
//! prime:3                   3^n
//! list:0,1,10               an explicit finite list
//! scale:2*geom:q=2          2 · 2^n
//! ```

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::exact::{format_rational, parse_rational, rational_pow, Rational};
use crate::metric::{FiniteMetricSpace, MetricError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("cannot parse sequence spec {0:?}")]
    BadSpec(String),
    #[error("geometric base must exceed 1, got {0}")]
    BaseNotAboveOne(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("coefficient must be positive, got {0}")]
    NonPositiveCoefficient(String),
    #[error("exponent list must be strictly increasing with phi(n) >= n; fails at n = {0}")]
    BadExponents(usize),
    #[error("sequence is not strictly increasing at index {0}")]
    NotStrictlyIncreasing(usize),
    #[error("index {index} is outside the sequence (length {len})")]
    OutOfRange { index: usize, len: usize },
}

impl SequenceError {
    pub fn kind(&self) -> &'static str {
        match self {
            SequenceError::BadSpec(_) => "BadSpec",
            SequenceError::BaseNotAboveOne(_) => "BaseNotAboveOne",
            SequenceError::NotPrime(_) => "NotPrime",
            SequenceError::NonPositiveCoefficient(_) => "NonPositiveCoefficient",
            SequenceError::BadExponents(_) => "BadExponents",
            SequenceError::NotStrictlyIncreasing(_) => "NotStrictlyIncreasing",
            SequenceError::OutOfRange { .. } => "OutOfRange",
        }
    }
}

/// Integer exponent rule `φ` with `φ(n) ≥ n`, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    Identity,
    Square,
    /// `φ(1), φ(2), …` up to the list length.
    Custom(Vec<u64>),
}

impl Exponent {
    /// `φ(n)` for 1-based `n`, or `None` past the end of a custom list.
    pub fn apply(&self, n: usize) -> Option<u64> {
        match self {
            Exponent::Identity => Some(n as u64),
            Exponent::Square => Some((n as u64) * (n as u64)),
            Exponent::Custom(v) => v.get(n.checked_sub(1)?).copied(),
        }
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            Exponent::Custom(v) => Some(v.len()),
            _ => None,
        }
    }

    fn check(&self) -> Result<(), SequenceError> {
        if let Exponent::Custom(v) = self {
            for (i, &e) in v.iter().enumerate() {
                if e < (i as u64 + 1) || (i > 0 && e <= v[i - 1]) {
                    return Err(SequenceError::BadExponents(i + 1));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Identity => f.write_str("id"),
            Exponent::Square => f.write_str("square"),
            Exponent::Custom(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                f.write_str(&parts.join(";"))
            }
        }
    }
}

impl FromStr for Exponent {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let e = match s.trim() {
            "id" | "identity" => Exponent::Identity,
            "square" | "sq" => Exponent::Square,
            list => Exponent::Custom(
                list.split(';')
                    .map(|t| t.trim().parse::<u64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| SequenceError::BadSpec(s.to_string()))?,
            ),
        };
        e.check()?;
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceKind {
    Geometric { q: Rational, phi: Exponent },
    PrimePower(u64),
    Explicit(Vec<Rational>),
}

/// `λ · x_n` for a base sequence `x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealSequenceSpace {
    kind: SequenceKind,
    coefficient: Rational,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RealSequenceSpace {
    pub fn geometric(q: Rational, phi: Exponent) -> Result<Self, SequenceError> {
        if q <= Rational::one() {
            return Err(SequenceError::BaseNotAboveOne(format_rational(&q)));
        }
        phi.check()?;
        Ok(RealSequenceSpace {
            kind: SequenceKind::Geometric { q, phi },
            coefficient: Rational::one(),
        })
    }

    pub fn prime_power(p: u64) -> Result<Self, SequenceError> {
        if !is_prime(p) {
            return Err(SequenceError::NotPrime(p));
        }
        Ok(RealSequenceSpace {
            kind: SequenceKind::PrimePower(p),
            coefficient: Rational::one(),
        })
    }

    pub fn explicit(xs: Vec<Rational>) -> Result<Self, SequenceError> {
        if xs.is_empty() {
            return Err(SequenceError::BadSpec("empty list".into()));
        }
        if let Some(i) = xs.windows(2).position(|w| w[0] >= w[1]) {
            return Err(SequenceError::NotStrictlyIncreasing(i + 2));
        }
        Ok(RealSequenceSpace {
            kind: SequenceKind::Explicit(xs),
            coefficient: Rational::one(),
        })
    }

    /// The similarity image `λ · self`.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self, SequenceError> {
        if !lambda.is_positive() {
            return Err(SequenceError::NonPositiveCoefficient(format_rational(lambda)));
        }
        Ok(RealSequenceSpace {
            kind: self.kind.clone(),
            coefficient: &self.coefficient * lambda,
        })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    /// Number of available elements; `None` for unbounded sequences.
    pub fn max_len(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Geometric { phi, .. } => phi.len(),
            SequenceKind::PrimePower(_) => None,
            SequenceKind::Explicit(v) => Some(v.len()),
        }
    }

    /// Base `q` and exponent rule, for geometric and prime-power sequences.
    pub fn as_geometric(&self) -> Option<(Rational, Exponent)> {
        match &self.kind {
            SequenceKind::Geometric { q, phi } => Some((q.clone(), phi.clone())),
            SequenceKind::PrimePower(p) => Some((Rational::from_integer((*p).into()), Exponent::Identity)),
            SequenceKind::Explicit(_) => None,
        }
    }

    /// `x_n`, 1-based.
    pub fn element(&self, n: usize) -> Result<Rational, SequenceError> {
        let out_of_range = || SequenceError::OutOfRange {
            index: n,
            len: self.max_len().unwrap_or(usize::MAX),
        };
        if n == 0 {
            return Err(out_of_range());
        }
        let base = match &self.kind {
            SequenceKind::Geometric { q, phi } => {
                let e = phi.apply(n).ok_or_else(out_of_range)?;
                rational_pow(q, e as i64)
            }
            SequenceKind::PrimePower(p) => {
                rational_pow(&Rational::from_integer((*p).into()), n as i64)
            }
            SequenceKind::Explicit(v) => v.get(n - 1).cloned().ok_or_else(out_of_range)?,
        };
        Ok(base * &self.coefficient)
    }

    /// `x₁, …, x_M`.
    pub fn window(&self, m: usize) -> Result<Vec<Rational>, SequenceError> {
        (1..=m).map(|n| self.element(n)).collect()
    }

    /// The finite subspace `{x₁, …, x_M}` with the induced metric.
    pub fn truncation(&self, m: usize) -> Result<FiniteMetricSpace, MetricError> {
        let xs = self.window(m).map_err(|_| MetricError::Empty)?;
        FiniteMetricSpace::from_real_points(&xs)
    }
}

impl fmt::Display for RealSequenceSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.coefficient.is_one() {
            write!(f, "scale:{}*", format_rational(&self.coefficient))?;
        }
        match &self.kind {
            SequenceKind::Geometric { q, phi } => {
                write!(f, "geom:q={}", format_rational(q))?;
                if *phi != Exponent::Identity {
                    write!(f, ",phi={phi}")?;
                }
                Ok(())
            }
            SequenceKind::PrimePower(p) => write!(f, "prime:{p}"),
            SequenceKind::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(format_rational).collect();
                write!(f, "list:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for RealSequenceSpace {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SequenceError::BadSpec(s.to_string());
        let (tag, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        match tag {
            "scale" => {
                let (lambda, inner) = rest.split_once('*').ok_or_else(bad)?;
                let lambda = parse_rational(lambda).map_err(|_| bad())?;
                inner.parse::<RealSequenceSpace>()?.scaled(&lambda)
            }
            "prime" => Self::prime_power(rest.trim().parse().map_err(|_| bad())?),
            "list" => Self::explicit(
                rest.split(',')
                    .map(parse_rational)
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?,
            ),
            "geom" => {
                let mut q = None;
                let mut phi = Exponent::Identity;
                for part in rest.split(',') {
                    match part.split_once('=') {
                        Some(("q", v)) => q = Some(parse_rational(v).map_err(|_| bad())?),
                        Some(("phi", v)) => phi = v.parse()?,
                        _ => return Err(bad()),
                    }
                }
                Self::geometric(q.ok_or_else(bad)?, phi)
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn parse_round_trip() {
        for spec in [
            "geom:q=2",
            "geom:q=2,phi=square",
            "geom:q=3/2,phi=1;4;9",
            "prime:3",
            "list:0,1,10",
            "scale:2*geom:q=2",
            "scale:1/3*prime:5",
        ] {
            let s: RealSequenceSpace = spec.parse().unwrap();
            assert_eq!(s.to_string(), spec);
        }
    }

    #[test]
    fn parse_errors() {
        assert_eq!("prime:9".parse::<RealSequenceSpace>(), Err(SequenceError::NotPrime(9)));
        assert!(matches!(
            "geom:q=1".parse::<RealSequenceSpace>(),
            Err(SequenceError::BaseNotAboveOne(_))
        ));
        assert_eq!(
            "geom:q=2,phi=1;1".parse::<RealSequenceSpace>(),
            Err(SequenceError::BadExponents(2))
        );
        assert_eq!(
            "geom:q=2,phi=2;3;3".parse::<RealSequenceSpace>(),
            Err(SequenceError::BadExponents(3))
        );
        assert!(matches!(
            "list:1,0".parse::<RealSequenceSpace>(),
            Err(SequenceError::NotStrictlyIncreasing(2))
        ));
        assert!(matches!(
            "scale:0*prime:3".parse::<RealSequenceSpace>(),
            Err(SequenceError::NonPositiveCoefficient(_))
        ));
        assert!("cloud:3".parse::<RealSequenceSpace>().is_err());
    }

    #[test]
    fn elements() {
        let s: RealSequenceSpace = "geom:q=2,phi=square".parse().unwrap();
        assert_eq!(s.window(3).unwrap(), vec![rat(2), rat(16), rat(512)]);
        let p: RealSequenceSpace = "scale:2*prime:3".parse().unwrap();
        assert_eq!(p.window(3).unwrap(), vec![rat(6), rat(18), rat(54)]);
        let h: RealSequenceSpace = "geom:q=3/2".parse().unwrap();
        assert_eq!(h.element(2).unwrap(), ratio(9, 4));
        let l: RealSequenceSpace = "list:0,1,10".parse().unwrap();
        assert_eq!(l.element(4), Err(SequenceError::OutOfRange { index: 4, len: 3 }));
        assert!(l.element(0).is_err());
    }

    #[test]
    fn truncation_matches_real_points() {
        let p: RealSequenceSpace = "prime:3".parse().unwrap();
        let t = p.truncation(3).unwrap();
        assert_eq!(t.dist(0, 2), &rat(24));
        assert_eq!(t.dist(1, 2), &rat(18));
    }
}
