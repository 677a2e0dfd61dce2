//! Exact Gromov–Hausdorff distance between finite metric spaces.
//!
//! `d_GH(X, Y) = ½ · min { dis R : R bi-total between X and Y }`.
//!
//! The solver rescales both distance matrices by the common denominator so
//! the search runs on integers (`i128` when the values fit, `BigInt`
//! otherwise). It proceeds in two phases:
//!
//! 1. Branch-and-bound for the optimal distortion. Distortion is monotone
//!    under inclusion, so only minimal bi-total relations need to be
//!    searched; those are disjoint unions of stars. Left points are assigned
//!    in order of decreasing eccentricity, each either a single right point
//!    (not owned by another star) or a set of at least two right points that
//!    nobody else touches. Every unassigned left point keeps a running lower
//!    bound per candidate right point, which gives forward-checking bounds.
//! 2. A lexicographic depth-first search, over all bi-total relations, for
//!    the smallest sorted pair list whose distortion equals the optimum.

use std::cmp::Ordering;
use std::ops::Sub;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::correspondence::{enumerate_masks, Correspondence, GhError};
use crate::exact::{common_denominator, serde_rational, Rational};
use crate::metric::FiniteMetricSpace;

/// Points per side the branch-and-bound accepts unless configured otherwise.
pub const DEFAULT_MAX_POINTS: usize = 8;
/// Bitmasks are `u32`, and subset tables are `2^m` long.
const MAX_POINTS_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest allowed `max(n, m)`.
    pub max_points: usize,
    /// Abort with [`GhError::NodeLimit`] past this many search nodes.
    pub max_nodes: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_points: DEFAULT_MAX_POINTS,
            max_nodes: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhResult {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub witness: Correspondence,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhBounds {
    #[serde(with = "serde_rational")]
    pub lower: Rational,
    #[serde(with = "serde_rational")]
    pub upper: Rational,
}

impl Serialize for Correspondence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

pub fn gh_exact(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<GhResult, GhError> {
    gh_exact_with(x, y, &SolverConfig::default())
}

pub fn gh_exact_with(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    config: &SolverConfig,
) -> Result<GhResult, GhError> {
    let cap = config.max_points.min(MAX_POINTS_LIMIT);
    let largest = x.len().max(y.len());
    if largest > cap {
        return Err(GhError::TooLarge {
            what: "max(n, m)",
            got: largest,
            cap,
        });
    }
    let scaled = ScaledPair::new(x, y);
    let (distortion, masks, nodes) = match &scaled.matrices {
        Matrices::Small(dx, dy) => solve(x.len(), y.len(), dx, dy, config.max_nodes)?,
        Matrices::Big(dx, dy) => solve(x.len(), y.len(), dx, dy, config.max_nodes)?,
    };
    let witness = Correspondence::from_masks(y.len(), &masks).expect("solver returns a bi-total relation");
    Ok(GhResult {
        value: scaled.to_gh_value(distortion),
        witness,
        nodes_explored: nodes,
    })
}

/// Exhaustive oracle: minimum over every bi-total relation
/// (`n * m ≤ 12`), with the lexicographically smallest minimizing pair list.
pub fn gh_exhaustive(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<GhResult, GhError> {
    let (n, m) = (x.len(), y.len());
    let masks = enumerate_masks(n, m)?;
    let scaled = ScaledPair::new(x, y);
    let (dx, dy) = match &scaled.matrices {
        Matrices::Small(dx, dy) => (
            dx.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
            dy.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
        ),
        Matrices::Big(dx, dy) => (dx.clone(), dy.clone()),
    };
    let mut best: Option<(BigInt, Vec<(usize, usize)>)> = None;
    let mut visited = 0u64;
    for mask in masks {
        visited += 1;
        let pairs: Vec<(usize, usize)> = (0..n * m)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b / m, b % m))
            .collect();
        let mut dis = BigInt::zero();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                let d = abs_diff(&dx[i * n + k], &dy[j * m + l]);
                if d > dis {
                    dis = d;
                }
            }
        }
        let better = match &best {
            None => true,
            Some((b, p)) => dis < *b || (dis == *b && pairs < *p),
        };
        if better {
            best = Some((dis, pairs));
        }
    }
    let (dis, pairs) = best.expect("at least one correspondence exists");
    Ok(GhResult {
        value: scaled.to_gh_value_big(dis),
        witness: Correspondence::new(n, m, pairs).expect("enumerated relations are bi-total"),
        nodes_explored: visited,
    })
}

/// Diameter bounds: `|diam X − diam Y| / 2 ≤ d_GH ≤ min(max(diam X, diam Y), dis G) / 2`,
/// where `G` is [`greedy_correspondence`].
pub fn gh_bounds(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> GhBounds {
    let (dx, dy) = (x.diameter(), y.diameter());
    let lower = crate::exact::abs_diff(&dx, &dy) / Rational::from_integer(2.into());
    let greedy = greedy_correspondence(x, y)
        .distortion(x, y)
        .expect("greedy relation matches the spaces");
    let upper = dx.max(dy).min(greedy) / Rational::from_integer(2.into());
    GhBounds { lower, upper }
}

/// Pairs points by eccentricity rank: the `k`-th most eccentric point of the
/// larger side goes to the proportionally placed point of the other side.
pub fn greedy_correspondence(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Correspondence {
    let (n, m) = (x.len(), y.len());
    let rank = |s: &FiniteMetricSpace| {
        let ecc: Vec<Rational> = (0..s.len()).map(|i| s.eccentricity(i)).collect();
        let mut idx: Vec<usize> = (0..s.len()).collect();
        idx.sort_by(|&a, &b| ecc[b].cmp(&ecc[a]).then(a.cmp(&b)));
        idx
    };
    let (sx, sy) = (rank(x), rank(y));
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|k| (sx[k], sy[k * m / n])).collect();
    pairs.extend((0..m).map(|j| (sx[j * n / m], sy[j])));
    Correspondence::new(n, m, pairs).expect("rank matching is bi-total")
}

enum Matrices {
    Small(Vec<i128>, Vec<i128>),
    Big(Vec<BigInt>, Vec<BigInt>),
}

/// Both distance matrices multiplied by the lcm of all denominators.
struct ScaledPair {
    matrices: Matrices,
    scale: BigInt,
}

impl ScaledPair {
    fn new(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Self {
        let scale = common_denominator(x.rows().chain(y.rows()).flatten());
        let to_int = |s: &FiniteMetricSpace| -> Vec<BigInt> {
            s.rows()
                .flatten()
                .map(|d| d.numer() * (&scale / d.denom()))
                .collect()
        };
        let (bx, by) = (to_int(x), to_int(y));
        let small = |v: &[BigInt]| -> Option<Vec<i128>> {
            v.iter().map(|d| d.to_i64().map(i128::from)).collect()
        };
        let matrices = match (small(&bx), small(&by)) {
            (Some(sx), Some(sy)) => Matrices::Small(sx, sy),
            _ => Matrices::Big(bx, by),
        };
        ScaledPair { matrices, scale }
    }

    fn to_gh_value(&self, distortion: Dist) -> Rational {
        match distortion {
            Dist::Small(v) => self.to_gh_value_big(BigInt::from(v)),
            Dist::Big(v) => self.to_gh_value_big(v),
        }
    }

    fn to_gh_value_big(&self, distortion: BigInt) -> Rational {
        Rational::new(distortion, &self.scale * 2)
    }
}

enum Dist {
    Small(i128),
    Big(BigInt),
}

trait Value: Clone + Ord + Zero + Sub<Output = Self> {
    fn wrap(self) -> Dist;
}

impl Value for i128 {
    fn wrap(self) -> Dist {
        Dist::Small(self)
    }
}

impl Value for BigInt {
    fn wrap(self) -> Dist {
        Dist::Big(self)
    }
}

fn abs_diff<T: Value>(a: &T, b: &T) -> T {
    if a >= b {
        a.clone() - b.clone()
    } else {
        b.clone() - a.clone()
    }
}

fn solve<T: Value>(
    n: usize,
    m: usize,
    dx: &[T],
    dy: &[T],
    max_nodes: Option<u64>,
) -> Result<(Dist, Vec<u32>, u64), GhError> {
    let problem = Problem::new(n, m, dx, dy);
    let mut nodes = 0u64;
    let (optimum, fallback) = problem.optimal_distortion(&mut nodes, max_nodes)?;
    let masks = problem
        .lex_min_witness(&optimum, &mut nodes, max_nodes)?
        .unwrap_or(fallback);
    Ok((optimum.wrap(), masks, nodes))
}

struct Problem<'a, T> {
    n: usize,
    m: usize,
    dx: &'a [T],
    dy: &'a [T],
    /// Diameter in `Y` of every subset mask.
    subset_diam: Vec<T>,
    full: u32,
}

/// Mutable search state shared by both phases.
#[derive(Clone)]
struct State<T> {
    masks: Vec<u32>,
    /// Lower bound on the cost of adding `(x, j)` for unassigned `x`.
    cost: Vec<T>,
    current: T,
    touched: u32,
    owned: u32,
}

impl<'a, T: Value> Problem<'a, T> {
    fn new(n: usize, m: usize, dx: &'a [T], dy: &'a [T]) -> Self {
        let mut subset_diam = vec![T::zero(); 1 << m];
        for mask in 1u32..(1 << m) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut d = subset_diam[rest as usize].clone();
            for j in bits(rest, m) {
                if dy[low * m + j] > d {
                    d = dy[low * m + j].clone();
                }
            }
            subset_diam[mask as usize] = d;
        }
        Problem {
            n,
            m,
            dx,
            dy,
            subset_diam,
            full: (1u32 << m) - 1,
        }
    }

    fn initial_state(&self) -> State<T> {
        State {
            masks: vec![0; self.n],
            cost: vec![T::zero(); self.n * self.m],
            current: T::zero(),
            touched: 0,
            owned: 0,
        }
    }

    fn diam_x(&self) -> T {
        self.dx.iter().max().cloned().unwrap_or_else(T::zero)
    }

    fn diam_y(&self) -> T {
        self.dy.iter().max().cloned().unwrap_or_else(T::zero)
    }

    fn distortion_of(&self, masks: &[u32]) -> T {
        let pairs: Vec<(usize, usize)> = masks
            .iter()
            .enumerate()
            .flat_map(|(i, &mk)| bits(mk, self.m).map(move |j| (i, j)))
            .collect();
        let mut worst = T::zero();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                let d = abs_diff(&self.dx[i * self.n + k], &self.dy[j * self.m + l]);
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Value of assigning `set` to left point `x` in `state`.
    fn assign_value(&self, state: &State<T>, x: usize, set: u32) -> T {
        let mut v = state.current.clone();
        let sd = &self.subset_diam[set as usize];
        if *sd > v {
            v = sd.clone();
        }
        for j in bits(set, self.m) {
            let c = &state.cost[x * self.m + j];
            if *c > v {
                v = c.clone();
            }
        }
        v
    }

    fn apply(&self, state: &mut State<T>, x: usize, set: u32, value: T, multi: bool) {
        state.masks[x] = set;
        state.current = value;
        state.touched |= set;
        if multi {
            state.owned |= set;
        }
        for other in 0..self.n {
            if state.masks[other] != 0 {
                continue;
            }
            let dxo = &self.dx[other * self.n + x];
            for j in 0..self.m {
                let cell = &mut state.cost[other * self.m + j];
                for jj in bits(set, self.m) {
                    let d = abs_diff(dxo, &self.dy[j * self.m + jj]);
                    if d > *cell {
                        *cell = d;
                    }
                }
            }
        }
    }

    /// Lower bound on the final distortion of any completion of `state`, or
    /// `None` if no completion exists. Each unassigned left point must relate
    /// to at least one right point in `candidates`.
    fn completion_bound(&self, state: &State<T>, candidates: u32) -> Option<T> {
        let mut bound = state.current.clone();
        let mut unassigned = false;
        for x in (0..self.n).filter(|&x| state.masks[x] == 0) {
            unassigned = true;
            let row = &state.cost[x * self.m..(x + 1) * self.m];
            let best = bits(candidates, self.m).map(|j| &row[j]).min()?;
            if *best > bound {
                bound = best.clone();
            }
        }
        let uncovered = self.full & !state.touched;
        if uncovered != 0 {
            if !unassigned {
                return None;
            }
            for j in bits(uncovered, self.m) {
                let best = (0..self.n)
                    .filter(|&x| state.masks[x] == 0)
                    .map(|x| &state.cost[x * self.m + j])
                    .min()
                    .expect("some left point is unassigned");
                if *best > bound {
                    bound = best.clone();
                }
            }
        }
        Some(bound)
    }

    fn tick(nodes: &mut u64, max_nodes: Option<u64>) -> Result<(), GhError> {
        *nodes += 1;
        match max_nodes {
            Some(limit) if *nodes > limit => Err(GhError::NodeLimit(limit)),
            _ => Ok(()),
        }
    }

    /// Phase 1. Returns the optimal distortion and some optimal assignment.
    fn optimal_distortion(
        &self,
        nodes: &mut u64,
        max_nodes: Option<u64>,
    ) -> Result<(T, Vec<u32>), GhError> {
        // The full relation has distortion max(diam X, diam Y).
        let mut best = self.diam_x().max(self.diam_y());
        let mut best_masks = vec![self.full; self.n];
        let greedy = self.greedy_masks();
        let g = self.distortion_of(&greedy);
        if g < best {
            best = g;
            best_masks = greedy;
        }
        let floor = abs_diff(&self.diam_x(), &self.diam_y());
        let mut order: Vec<usize> = (0..self.n).collect();
        let ecc = |i: usize| self.dx[i * self.n..(i + 1) * self.n].iter().max().cloned();
        order.sort_by(|&a, &b| ecc(b).cmp(&ecc(a)).then(a.cmp(&b)));
        if best > floor {
            let mut search = BnB {
                problem: self,
                order: &order,
                best,
                best_masks,
                floor: &floor,
                nodes,
                max_nodes,
            };
            let mut state = self.initial_state();
            search.dfs(&mut state, 0)?;
            best = search.best;
            best_masks = search.best_masks;
        }
        Ok((best, best_masks))
    }

    fn greedy_masks(&self) -> Vec<u32> {
        // Same rank matching as `greedy_correspondence`, on the integer data.
        let (n, m) = (self.n, self.m);
        let rank = |d: &[T], k: usize| {
            let mut idx: Vec<usize> = (0..k).collect();
            let ecc = |i: usize| d[i * k..(i + 1) * k].iter().max().cloned();
            idx.sort_by(|&a, &b| ecc(b).cmp(&ecc(a)).then(a.cmp(&b)));
            idx
        };
        let (sx, sy) = (rank(self.dx, n), rank(self.dy, m));
        let mut masks = vec![0u32; n];
        for k in 0..n {
            masks[sx[k]] |= 1 << sy[k * m / n];
        }
        for j in 0..m {
            masks[sx[j * n / m]] |= 1 << sy[j];
        }
        masks
    }

    /// Phase 2: lexicographically smallest relation with distortion ≤ `target`.
    fn lex_min_witness(
        &self,
        target: &T,
        nodes: &mut u64,
        max_nodes: Option<u64>,
    ) -> Result<Option<Vec<u32>>, GhError> {
        // Only the final left point treats "list ended" as smallest.
        let inner = lex_subset_order(self.m, false);
        let last = lex_subset_order(self.m, true);
        let mut state = self.initial_state();
        self.lex_dfs(&mut state, 0, target, &inner, &last, nodes, max_nodes)
    }

    #[allow(clippy::too_many_arguments)]
    fn lex_dfs(
        &self,
        state: &mut State<T>,
        x: usize,
        target: &T,
        inner: &[u32],
        last: &[u32],
        nodes: &mut u64,
        max_nodes: Option<u64>,
    ) -> Result<Option<Vec<u32>>, GhError> {
        Self::tick(nodes, max_nodes)?;
        if x == self.n {
            return Ok((state.touched == self.full).then(|| state.masks.clone()));
        }
        match self.completion_bound(state, self.full) {
            Some(b) if b <= *target => {}
            _ => return Ok(None),
        }
        let order = if x + 1 == self.n { last } else { inner };
        for &set in order {
            let v = self.assign_value(state, x, set);
            if v > *target {
                continue;
            }
            let saved = state.clone();
            self.apply(state, x, set, v, false);
            let found = self.lex_dfs(state, x + 1, target, inner, last, nodes, max_nodes)?;
            *state = saved;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

struct BnB<'p, 'a, T> {
    problem: &'p Problem<'a, T>,
    order: &'p [usize],
    best: T,
    best_masks: Vec<u32>,
    floor: &'p T,
    nodes: &'p mut u64,
    max_nodes: Option<u64>,
}

impl<T: Value> BnB<'_, '_, T> {
    fn done(&self) -> bool {
        self.best <= *self.floor
    }

    fn dfs(&mut self, state: &mut State<T>, depth: usize) -> Result<(), GhError> {
        Problem::<T>::tick(self.nodes, self.max_nodes)?;
        let p = self.problem;
        if depth == p.n {
            if state.touched == p.full && state.current < self.best {
                self.best = state.current.clone();
                self.best_masks = state.masks.clone();
            }
            return Ok(());
        }
        let free_singles = p.full & !state.owned;
        match p.completion_bound(state, free_singles) {
            Some(b) if b < self.best => {}
            _ => return Ok(()),
        }
        let x = self.order[depth];
        let untouched = p.full & !state.touched;
        let mut options: Vec<(T, u32, bool)> = bits(free_singles, p.m)
            .map(|j| (p.assign_value(state, x, 1 << j), 1u32 << j, false))
            .collect();
        // Star centers: sets of at least two untouched points.
        let mut sub = untouched;
        while sub != 0 {
            if sub.count_ones() >= 2 {
                options.push((p.assign_value(state, x, sub), sub, true));
            }
            sub = (sub - 1) & untouched;
        }
        options.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (value, set, multi) in options {
            if value >= self.best {
                break;
            }
            let saved = state.clone();
            p.apply(state, x, set, value, multi);
            self.dfs(state, depth + 1)?;
            *state = saved;
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

fn bits(mask: u32, width: usize) -> impl Iterator<Item = usize> {
    (0..width).filter(move |&j| mask >> j & 1 == 1)
}

/// All non-empty subsets of `0..m`, ordered by comparing their ascending
/// element lists. When one list is a prefix of the other, the shorter one is
/// larger unless `ended_is_smallest` (it is followed by the next left
/// point's pairs, which compare greater than any pair of this point).
fn lex_subset_order(m: usize, ended_is_smallest: bool) -> Vec<u32> {
    let mut subsets: Vec<u32> = (1u32..(1 << m)).collect();
    subsets.sort_by(|&a, &b| {
        let (mut ia, mut ib) = (bits(a, m), bits(b, m));
        loop {
            match (ia.next(), ib.next()) {
                (Some(x), Some(y)) if x == y => continue,
                (Some(x), Some(y)) => return x.cmp(&y),
                (None, None) => return Ordering::Equal,
                (None, Some(_)) if ended_is_smallest => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) if ended_is_smallest => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
            }
        }
    });
    subsets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::EXHAUSTIVE_CAP;
    use crate::exact::{rat, ratio};

    fn line(xs: &[i64]) -> FiniteMetricSpace {
        FiniteMetricSpace::from_real_points(&xs.iter().map(|&x| rat(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn self_distance_is_zero_with_identity() {
        let x = line(&[0, 1, 5, 6]);
        let r = gh_exact(&x, &x).unwrap();
        assert_eq!(r.value, rat(0));
        assert_eq!(r.witness, Correspondence::identity(4));
    }

    #[test]
    fn one_point_gives_half_diameter() {
        let x = line(&[0, 3, 7]);
        let r = gh_exact(&FiniteMetricSpace::point(), &x).unwrap();
        assert_eq!(r.value, ratio(7, 2));
        assert_eq!(r.witness, Correspondence::full(1, 3));
    }

    #[test]
    fn two_point_spaces() {
        // Brute force over the 7 bi-total relations on 2x2 gives 1.
        let r = gh_exact(&line(&[0, 3]), &line(&[0, 1])).unwrap();
        assert_eq!(r.value, rat(1));
        assert_eq!(gh_exhaustive(&line(&[0, 3]), &line(&[0, 1])).unwrap().value, rat(1));
        assert_eq!(r.witness.pairs(), &[(0, 0), (1, 1)]);
    }

    #[test]
    fn bounds_examples() {
        let x = line(&[0, 2, 5]);
        let b = gh_bounds(&x, &x);
        assert_eq!(b.lower, rat(0));
        assert!(b.upper >= rat(0));

        let d4 = line(&[0, 4]);
        let b = gh_bounds(&FiniteMetricSpace::point(), &d4);
        assert_eq!(b.lower, rat(2));
        assert_eq!(b.upper, rat(2));

        let b = gh_bounds(&line(&[0, 10]), &line(&[0, 1, 2]));
        assert_eq!(b.lower, rat(4));
        assert!(b.upper <= rat(5));
    }

    #[test]
    fn too_large_is_rejected() {
        let x = line(&[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        assert!(matches!(
            gh_exact(&x, &x),
            Err(GhError::TooLarge { got: 9, cap: 8, .. })
        ));
        let cfg = SolverConfig {
            max_points: 2,
            ..Default::default()
        };
        assert!(gh_exact_with(&line(&[0, 1, 2]), &line(&[0, 1]), &cfg).is_err());
    }

    #[test]
    fn node_limit_is_enforced() {
        let x = line(&[0, 1, 3, 7]);
        let y = line(&[0, 2, 3, 9]);
        let cfg = SolverConfig {
            max_nodes: Some(1),
            ..Default::default()
        };
        assert_eq!(gh_exact_with(&x, &y, &cfg), Err(GhError::NodeLimit(1)));
    }

    #[test]
    fn lex_order_matches_sorted_pair_lists() {
        // Compare the custom subset orders against sorting the actual pair
        // lists of two-point relations.
        let m = 3;
        for ended_small in [false, true] {
            let order = lex_subset_order(m, ended_small);
            let as_pairs = |s: u32| {
                let mut v: Vec<(usize, usize)> = bits(s, m).map(|j| (0, j)).collect();
                if !ended_small {
                    v.push((1, 0));
                }
                v
            };
            let mut sorted = order.clone();
            sorted.sort_by_key(|&s| as_pairs(s));
            assert_eq!(order, sorted);
        }
    }

    #[test]
    fn witness_matches_exhaustive_lex_min() {
        let spaces = [line(&[0, 1, 3]), line(&[0, 2]), line(&[0, 1, 2, 3]), line(&[0, 5, 6])];
        for x in &spaces {
            for y in &spaces {
                if x.len() * y.len() > EXHAUSTIVE_CAP {
                    continue;
                }
                let a = gh_exact(x, y).unwrap();
                let b = gh_exhaustive(x, y).unwrap();
                assert_eq!(a.value, b.value);
                assert_eq!(a.witness, b.witness);
            }
        }
    }

    #[test]
    fn big_integer_path() {
        let huge = Rational::from_integer(BigInt::from(10).pow(30));
        let x = FiniteMetricSpace::from_real_points(&[rat(0), huge.clone()]).unwrap();
        let y = FiniteMetricSpace::from_real_points(&[rat(0), huge.clone() + rat(4)]).unwrap();
        assert_eq!(gh_exact(&x, &y).unwrap().value, rat(2));
        assert_eq!(gh_exhaustive(&x, &y).unwrap().value, rat(2));
    }
}
