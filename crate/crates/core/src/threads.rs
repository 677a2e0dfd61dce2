//! Finite simulation of the completeness construction for Gromov–Hausdorff
//! limits.
//!
//! A [`ThreadSystem`] is a chain `X₁, …, X_N` joined by correspondences
//! `Rₙ ⊆ Xₙ × Xₙ₊₁` with `dis Rₙ < budgetₙ`. A thread picks one point per
//! space with `xₙ₊₁ ∈ Rₙ(xₙ)`. Distances between threads are read off at the
//! last level; the budgets bound how far that reading can be from the limit.
//! Quotienting threads at distance exactly zero gives the depth-`N`
//! approximation of the limit space, and projecting threads back to each
//! level gives correspondences whose distortion the budgets control.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::correspondence::{Correspondence, GhError};
use crate::exact::{format_rational, rat, rational_from_json, serde_rational, Rational};
use crate::metric::{FiniteMetricSpace, MetricError};

/// Thread enumeration cap used when none is given.
pub const DEFAULT_THREAD_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThreadError {
    #[error("a chain needs at least one space")]
    EmptyChain,
    #[error("{spaces} spaces need {expected} correspondences, got {got}")]
    LinkCount {
        spaces: usize,
        expected: usize,
        got: usize,
    },
    #[error("{expected} budgets expected, got {got}")]
    BudgetCount { expected: usize, got: usize },
    #[error("budget {link} must be positive")]
    NonPositiveBudget { link: usize },
    #[error("correspondence {link} is invalid: {source}")]
    BadLink { link: usize, source: GhError },
    #[error("correspondence {link} has distortion {distortion}, not below its budget {budget}")]
    BudgetExceeded {
        link: usize,
        distortion: String,
        budget: String,
    },
    #[error("thread count exceeds the cap of {cap}")]
    ThreadExplosion { cap: usize },
    #[error("threads do not belong to this system")]
    MixedSystems,
    #[error("depth {depth} is outside 1..={max}")]
    BadDepth { depth: usize, max: usize },
    #[error("projection to level {level} has distortion {distortion} above the bound {bound}; witness {witness:?}")]
    BoundViolated {
        level: usize,
        distortion: String,
        bound: String,
        /// `(x, xₙ, x', x'ₙ)`: limit points and their level-`n` partners.
        witness: (usize, usize, usize, usize),
    },
    #[error("projection to level {level} is not a correspondence: {source}")]
    NotACorrespondence { level: usize, source: GhError },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("malformed chain: {0}")]
    BadChain(String),
}

impl ThreadError {
    pub fn kind(&self) -> &'static str {
        match self {
            ThreadError::EmptyChain => "EmptyChain",
            ThreadError::LinkCount { .. } => "LinkCount",
            ThreadError::BudgetCount { .. } => "BudgetCount",
            ThreadError::NonPositiveBudget { .. } => "NonPositiveBudget",
            ThreadError::BadLink { .. } => "BadLink",
            ThreadError::BudgetExceeded { .. } => "BudgetExceeded",
            ThreadError::ThreadExplosion { .. } => "ThreadExplosion",
            ThreadError::MixedSystems => "MixedSystems",
            ThreadError::BadDepth { .. } => "BadDepth",
            ThreadError::BoundViolated { .. } => "BoundViolated",
            ThreadError::NotACorrespondence { .. } => "NotACorrespondence",
            ThreadError::Metric(e) => e.kind(),
            ThreadError::BadChain(_) => "BadChain",
        }
    }
}

/// One point index per space; consecutive indices are related by the chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Thread(pub Vec<usize>);

impl Thread {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Point at 1-based `level`.
    pub fn at(&self, level: usize) -> usize {
        self.0[level - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadSystem {
    spaces: Vec<FiniteMetricSpace>,
    links: Vec<Correspondence>,
    budgets: Vec<Rational>,
    /// Assumed bound on the rest of the (infinite) chain past level `N`.
    tail: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreadDistance {
    #[serde(with = "serde_rational")]
    pub approx: Rational,
    #[serde(with = "serde_rational")]
    pub error_bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSpace {
    pub space: FiniteMetricSpace,
    pub threads: Vec<Thread>,
    /// `classes[t]` is the limit point of `threads[t]`.
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    #[serde(with = "serde_rational")]
    pub distortion: Rational,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    #[serde(with = "serde_rational")]
    pub slack: Rational,
}

fn default_budget(link: usize) -> Rational {
    // Links are 1-based: R₁ has budget 1/2.
    Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), link))
}

impl ThreadSystem {
    /// Builds a chain, checking every link is bi-total between its spaces
    /// and strictly under budget. `budgets = None` means `1/2ⁿ` for link `n`.
    pub fn new(
        spaces: Vec<FiniteMetricSpace>,
        links: Vec<Correspondence>,
        budgets: Option<Vec<Rational>>,
    ) -> Result<Self, ThreadError> {
        if spaces.is_empty() {
            return Err(ThreadError::EmptyChain);
        }
        let expected = spaces.len() - 1;
        if links.len() != expected {
            return Err(ThreadError::LinkCount {
                spaces: spaces.len(),
                expected,
                got: links.len(),
            });
        }
        let (budgets, tail) = match budgets {
            None => {
                let b: Vec<Rational> = (1..=expected).map(default_budget).collect();
                // Σ_{k ≥ N} 1/2^k = 1/2^{N-1}.
                let tail = default_budget(expected);
                (b, tail)
            }
            Some(b) => {
                if b.len() != expected {
                    return Err(ThreadError::BudgetCount {
                        expected,
                        got: b.len(),
                    });
                }
                if let Some(link) = b.iter().position(|v| *v <= Rational::zero()) {
                    return Err(ThreadError::NonPositiveBudget { link: link + 1 });
                }
                // Continue the chain with halving budgets after the last link.
                let tail = b.last().cloned().unwrap_or_else(Rational::one);
                (b, tail)
            }
        };
        for (k, link) in links.iter().enumerate() {
            let dis = link
                .distortion(&spaces[k], &spaces[k + 1])
                .map_err(|source| ThreadError::BadLink { link: k + 1, source })?;
            if dis >= budgets[k] {
                return Err(ThreadError::BudgetExceeded {
                    link: k + 1,
                    distortion: format_rational(&dis),
                    budget: format_rational(&budgets[k]),
                });
            }
        }
        Ok(ThreadSystem {
            spaces,
            links,
            budgets,
            tail,
        })
    }

    /// The first `depth` levels of the chain.
    pub fn truncated(&self, depth: usize) -> Result<Self, ThreadError> {
        if depth == 0 || depth > self.depth() {
            return Err(ThreadError::BadDepth {
                depth,
                max: self.depth(),
            });
        }
        let budgets = self.budgets[..depth - 1].to_vec();
        let tail = if depth == self.depth() {
            self.tail.clone()
        } else {
            // Whatever the chain does beyond `depth` is bounded by its budgets.
            self.budgets[depth - 1..].iter().sum::<Rational>() + &self.tail
        };
        Ok(ThreadSystem {
            spaces: self.spaces[..depth].to_vec(),
            links: self.links[..depth - 1].to_vec(),
            budgets,
            tail,
        })
    }

    pub fn depth(&self) -> usize {
        self.spaces.len()
    }

    pub fn spaces(&self) -> &[FiniteMetricSpace] {
        &self.spaces
    }

    pub fn correspondences(&self) -> &[Correspondence] {
        &self.links
    }

    pub fn budgets(&self) -> &[Rational] {
        &self.budgets
    }

    /// Bound on `| |xₙx'ₙ| − |νν'| |` at 1-based `level`: the remaining
    /// budgets plus the tail. Equals `1/2^{level−1}` under default budgets.
    pub fn level_bound(&self, level: usize) -> Rational {
        self.budgets[level - 1..].iter().sum::<Rational>() + &self.tail
    }

    /// Error bound attached to distances read at the last level.
    pub fn tail_bound(&self) -> &Rational {
        &self.tail
    }

    /// All threads, in lexicographic order, or `ThreadExplosion`.
    pub fn enumerate_threads(&self, cap: usize) -> Result<Vec<Thread>, ThreadError> {
        let images: Vec<Vec<Vec<usize>>> = self
            .links
            .iter()
            .map(|r| (0..r.left_len()).map(|i| r.image(i).collect()).collect())
            .collect();
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.depth());
        for start in 0..self.spaces[0].len() {
            path.push(start);
            self.extend(&images, &mut path, &mut out, cap)?;
            path.pop();
        }
        Ok(out)
    }

    fn extend(
        &self,
        images: &[Vec<Vec<usize>>],
        path: &mut Vec<usize>,
        out: &mut Vec<Thread>,
        cap: usize,
    ) -> Result<(), ThreadError> {
        let level = path.len();
        if level == self.depth() {
            if out.len() == cap {
                return Err(ThreadError::ThreadExplosion { cap });
            }
            out.push(Thread(path.clone()));
            return Ok(());
        }
        let last = *path.last().expect("path starts non-empty");
        for &next in &images[level - 1][last] {
            path.push(next);
            self.extend(images, path, out, cap)?;
            path.pop();
        }
        Ok(())
    }

    /// `count` random threads (with repetition), for chains too branchy to
    /// enumerate.
    pub fn sample_threads(&self, rng: &mut impl Rng, count: usize) -> Vec<Thread> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut path = vec![rng.random_range(0..self.spaces[0].len())];
            for link in &self.links {
                let choices: Vec<usize> = link.image(*path.last().expect("non-empty")).collect();
                path.push(choices[rng.random_range(0..choices.len())]);
            }
            out.push(Thread(path));
        }
        out
    }

    pub fn is_thread(&self, t: &Thread) -> bool {
        t.0.len() == self.depth()
            && t.0.iter().zip(&self.spaces).all(|(&i, s)| i < s.len())
            && self
                .links
                .iter()
                .enumerate()
                .all(|(k, r)| r.contains(t.0[k], t.0[k + 1]))
    }

    /// `|xₙx'ₙ|` at 1-based `level`.
    pub fn distance_at(&self, a: &Thread, b: &Thread, level: usize) -> Result<Rational, ThreadError> {
        if !self.is_thread(a) || !self.is_thread(b) {
            return Err(ThreadError::MixedSystems);
        }
        if level == 0 || level > self.depth() {
            return Err(ThreadError::BadDepth {
                depth: level,
                max: self.depth(),
            });
        }
        Ok(self.spaces[level - 1].dist(a.at(level), b.at(level)).clone())
    }

    /// Thread distance read at the last level, with its certified error.
    pub fn thread_distance(&self, a: &Thread, b: &Thread) -> Result<ThreadDistance, ThreadError> {
        Ok(ThreadDistance {
            approx: self.distance_at(a, b, self.depth())?,
            error_bound: self.tail.clone(),
        })
    }

    pub fn limit_space(&self, cap: usize) -> Result<LimitSpace, ThreadError> {
        let threads = self.enumerate_threads(cap)?;
        self.quotient(threads)
    }

    /// Identifies threads at approximate distance exactly zero and returns
    /// the resulting metric space. Limit points are numbered in order of
    /// their first thread.
    pub fn quotient(&self, threads: Vec<Thread>) -> Result<LimitSpace, ThreadError> {
        if threads.iter().any(|t| !self.is_thread(t)) {
            return Err(ThreadError::MixedSystems);
        }
        let last = self.spaces.last().expect("non-empty chain");
        let level = self.depth();
        let mut reps: Vec<usize> = Vec::new();
        let mut classes = Vec::with_capacity(threads.len());
        for t in &threads {
            let found = reps
                .iter()
                .position(|&r| last.dist(threads[r].at(level), t.at(level)).is_zero());
            match found {
                Some(c) => classes.push(c),
                None => {
                    classes.push(reps.len());
                    reps.push(classes.len() - 1);
                }
            }
        }
        let matrix = reps
            .iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| last.dist(threads[a].at(level), threads[b].at(level)).clone())
                    .collect()
            })
            .collect();
        let space = FiniteMetricSpace::validate(matrix)?;
        Ok(LimitSpace {
            space,
            threads,
            classes,
        })
    }

    /// `R'ₙ = {([ν], νₙ)}` between the limit and level `n` (1-based).
    pub fn projection(&self, limit: &LimitSpace, level: usize) -> Result<Correspondence, ThreadError> {
        let pairs = limit
            .threads
            .iter()
            .zip(&limit.classes)
            .map(|(t, &c)| (c, t.at(level)))
            .collect();
        Correspondence::new(limit.space.len(), self.spaces[level - 1].len(), pairs)
            .map_err(|source| ThreadError::NotACorrespondence { level, source })
    }

    /// Checks `dis R'ₙ ≤ level_bound(n) + tolerance` at every level.
    pub fn verify_projection_bound(
        &self,
        limit: &LimitSpace,
        tolerance: &Rational,
    ) -> Result<Vec<LevelReport>, ThreadError> {
        let mut reports = Vec::with_capacity(self.depth());
        for level in 1..=self.depth() {
            let r = self.projection(limit, level)?;
            let xn = &self.spaces[level - 1];
            let distortion = r
                .distortion(&limit.space, xn)
                .map_err(|source| ThreadError::NotACorrespondence { level, source })?;
            let bound = self.level_bound(level);
            if distortion > &bound + tolerance {
                let witness = worst_pair(&r, &limit.space, xn, &distortion);
                return Err(ThreadError::BoundViolated {
                    level,
                    distortion: format_rational(&distortion),
                    bound: format_rational(&bound),
                    witness,
                });
            }
            reports.push(LevelReport {
                level,
                slack: &bound - &distortion,
                distortion,
                bound,
            });
        }
        Ok(reports)
    }

    /// Parses `{"spaces": [...], "correspondences": [[[i, j], ...], ...],
    /// "budgets": ["p/q", ...]?}`.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, ThreadError> {
        let bad = |m: &str| ThreadError::BadChain(m.to_string());
        let spaces = v
            .get("spaces")
            .and_then(|s| s.as_array())
            .ok_or_else(|| bad("missing `spaces` array"))?
            .iter()
            .map(FiniteMetricSpace::from_json_value)
            .collect::<Result<Vec<_>, _>>()?;
        let raw_links: Vec<Vec<(usize, usize)>> = match v.get("correspondences") {
            Some(c) => serde_json::from_value(c.clone()).map_err(|e| bad(&e.to_string()))?,
            None => Vec::new(),
        };
        if raw_links.len() + 1 != spaces.len() {
            return Err(ThreadError::LinkCount {
                spaces: spaces.len(),
                expected: spaces.len().saturating_sub(1),
                got: raw_links.len(),
            });
        }
        let links = raw_links
            .into_iter()
            .enumerate()
            .map(|(k, pairs)| {
                Correspondence::new(spaces[k].len(), spaces[k + 1].len(), pairs)
                    .map_err(|source| ThreadError::BadLink { link: k + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let budgets = match v.get("budgets") {
            None | Some(serde_json::Value::Null) => None,
            Some(serde_json::Value::Array(b)) => Some(
                b.iter()
                    .map(|x| rational_from_json(x).map_err(|e| bad(&e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            Some(_) => return Err(bad("`budgets` must be an array")),
        };
        Self::new(spaces, links, budgets)
    }
}

fn worst_pair(
    r: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    target: &Rational,
) -> (usize, usize, usize, usize) {
    for &(a, b) in r.pairs() {
        for &(c, d) in r.pairs() {
            let diff = x.dist(a, c) - y.dist(b, d);
            let diff = if diff < rat(0) { -diff } else { diff };
            if diff == *target {
                return (a, b, c, d);
            }
        }
    }
    (0, 0, 0, 0)
}
