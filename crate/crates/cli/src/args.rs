use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gh_cloud::exact::parse_rational;
use gh_cloud::sequence::{Exponent, RealSequenceSpace};
use gh_cloud::Rational;
use serde::{Serialize, Serializer};

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn sequence(s: &str) -> Result<RealSequenceSpace, String> {
    s.parse().map_err(|e: gh_cloud::sequence::SequenceError| e.to_string())
}

fn exponent(s: &str) -> Result<Exponent, String> {
    s.parse().map_err(|e: gh_cloud::sequence::SequenceError| e.to_string())
}

fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_rational<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&gh_cloud::exact::format_rational(v))
}

/// Exact Gromov–Hausdorff distances, cloud certificates and stabilizer
/// arithmetic.
#[derive(Debug, Parser, Serialize)]
#[command(name = "ghcloud", version)]
pub struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampling modes.
    #[arg(long, global = true, default_value_t = gh_cloud::repro::DEFAULT_SEED)]
    pub seed: u64,
    /// Wrap the output in {command, inputs, outputs, timing_secs}.
    #[arg(long, global = true)]
    pub report: bool,
    /// Abort the exact solver after this many search nodes.
    #[arg(long, global = true, env = "GHC_MAX_NODES")]
    pub max_nodes: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Gromov–Hausdorff distance between two spaces.
    Ghdist(GhdistArgs),
    /// Distance-difference curves, drop witnesses, representation searches.
    #[command(subcommand)]
    Cloud(CloudCommand),
    /// Stabilizer number theory.
    #[command(subcommand)]
    Stab(StabCommand),
    /// Thread construction over a chain of spaces.
    #[command(subcommand)]
    Threads(ThreadsCommand),
    /// Check a space file against the metric axioms.
    Validate {
        #[arg(long)]
        space: PathBuf,
    },
    /// Run every acceptance scenario.
    Repro(ReproArgs),
}

impl Command {
    /// Subcommand path, e.g. `"cloud drop"`.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ghdist(_) => "ghdist",
            Command::Cloud(c) => match c {
                CloudCommand::Delta { .. } => "cloud delta",
                CloudCommand::Drop { .. } => "cloud drop",
                CloudCommand::Represent { .. } => "cloud represent",
                CloudCommand::Scan { .. } => "cloud scan",
                CloudCommand::Explore { .. } => "cloud explore",
            },
            Command::Stab(s) => match s {
                StabCommand::Member { .. } => "stab member",
                StabCommand::RatioForm { .. } => "stab form9",
                StabCommand::RepunitEquation { .. } => "stab eq3",
                StabCommand::Gcd { .. } => "stab gcd",
                StabCommand::Square { .. } => "stab square",
            },
            Command::Threads(ThreadsCommand::Build { .. }) => "threads build",
            Command::Validate { .. } => "validate",
            Command::Repro(_) => "repro",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct GhdistArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    /// Exact value with witness (default).
    #[arg(long, conflicts_with = "bounds")]
    pub exact: bool,
    /// Diameter and greedy bounds only.
    #[arg(long)]
    pub bounds: bool,
    /// Largest accepted max(n, m) for the exact solver.
    #[arg(long, default_value_t = gh_cloud::gh::DEFAULT_MAX_POINTS)]
    pub max_points: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CloudCommand {
    /// Minimum distance mismatch per level s; optional CSV output.
    Delta {
        #[arg(long, value_parser = sequence)]
        #[serde(serialize_with = "ser_display")]
        seq_x: RealSequenceSpace,
        #[arg(long, value_parser = sequence)]
        #[serde(serialize_with = "ser_display")]
        seq_y: RealSequenceSpace,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 1)]
        base_x: usize,
        #[arg(long, default_value_t = 1)]
        base_y: usize,
        /// Also write the curve as CSV (columns s,min_abs_delta).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exhaustive scan of p^m − p^l − 2pⁿ + 2p^k.
    Drop {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        window: usize,
    },
    /// Solutions of λ = (x_n − x_k)/(x_m − x_l) in a window.
    Represent {
        #[arg(long, value_parser = rational)]
        #[serde(serialize_with = "ser_rational")]
        lambda: Rational,
        #[arg(long, value_parser = rational, required_unless_present = "seq")]
        #[serde(serialize_with = "ser_opt_rational")]
        q: Option<Rational>,
        #[arg(long, value_parser = exponent, default_value = "id")]
        #[serde(serialize_with = "ser_display")]
        phi: Exponent,
        /// A full sequence spec instead of --q/--phi.
        #[arg(long, value_parser = sequence, conflicts_with = "q")]
        #[serde(serialize_with = "ser_opt_display")]
        seq: Option<RealSequenceSpace>,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        floor: usize,
    },
    /// Ratio ranges for the three index orderings with growing exponent gaps.
    Scan {
        #[arg(long, value_parser = exponent, default_value = "square")]
        #[serde(serialize_with = "ser_display")]
        phi: Exponent,
        #[arg(long, value_parser = rational)]
        #[serde(serialize_with = "ser_rational")]
        q: Rational,
        #[arg(long, value_parser = rational)]
        #[serde(serialize_with = "ser_rational")]
        lambda: Rational,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        floor: usize,
    },
    /// Floating-point near-solutions for real q and λ (exploration only).
    Explore {
        #[arg(long, value_parser = exponent, default_value = "square")]
        #[serde(serialize_with = "ser_display")]
        phi: Exponent,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        floor: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn ser_opt_rational<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => ser_rational(r, s),
        None => s.serialize_none(),
    }
}

fn ser_opt_display<T: std::fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabCommand {
    /// Is λ an integer power of q?
    Member {
        #[arg(long, value_parser = rational)]
        #[serde(serialize_with = "ser_rational")]
        lambda: Rational,
        #[arg(long)]
        q: u64,
    },
    /// Least decomposition λ = q^α (q^{r₂d} − 1)/(q^{r₁d} − 1).
    #[command(name = "form9")]
    RatioForm {
        #[arg(long, value_parser = rational)]
        #[serde(serialize_with = "ser_rational")]
        lambda: Rational,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = gh_cloud::stabilizer::DEFAULT_BOUND)]
        bound: u64,
    },
    /// Coprime solution of a₁(qⁿ − 1) = a₂(qᵐ − 1).
    #[command(name = "eq3")]
    RepunitEquation {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// gcd(qⁿ − 1, qᵐ − 1).
    Gcd {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Search for λ² = (q^k − 1)/(q^l − 1) with λ = (qⁿ − 1)/(qᵐ − 1).
    Square {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = gh_cloud::stabilizer::DEFAULT_BOUND)]
        bound: u64,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreadsCommand {
    /// Enumerate threads, build the limit approximation and verify bounds.
    Build {
        #[arg(long)]
        chain: PathBuf,
        /// Use only the first N spaces of the chain.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = gh_cloud::threads::DEFAULT_THREAD_CAP)]
        cap: usize,
        /// Sample this many random threads instead of enumerating (uses --seed).
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct ReproArgs {
    /// Largest max(n, m) the exact solver accepts.
    #[arg(long, default_value_t = gh_cloud::gh::DEFAULT_MAX_POINTS)]
    pub solver_cap: usize,
    #[arg(long, default_value_t = gh_cloud::repro::DEFAULT_DROP_WINDOW)]
    pub drop_window: usize,
}
