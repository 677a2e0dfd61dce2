//! Exact Gromov–Hausdorff distances between finite metric spaces, plus the
//! finite certificates used to study clouds of unbounded subsets of the real
//! line: distance-difference curves, drop witnesses, representation searches
//! and the number theory of stabilizers of geometric sequences.

pub mod cloud;
pub mod correspondence;
pub mod exact;
pub mod gh;
pub mod metric;
pub mod random;
pub mod repro;
pub mod sequence;
pub mod stabilizer;
pub mod threads;

pub use correspondence::{enumerate_correspondences, Correspondence, GhError};
pub use exact::Rational;
pub use gh::{gh_bounds, gh_exact, gh_exact_with, gh_exhaustive, GhBounds, GhResult, SolverConfig};
pub use metric::{FiniteMetricSpace, MetricError, SubsetPair};
