//! Thin adapters from parsed arguments to library calls and JSON values.

use std::path::Path;

use gh_cloud::cloud::{self, CloudError};
use gh_cloud::exact::format_rational;
use gh_cloud::metric::MetricError;
use gh_cloud::random::rng;
use gh_cloud::repro::{run_all, ReproConfig};
use gh_cloud::sequence::RealSequenceSpace;
use gh_cloud::stabilizer::{self, StabilizerError};
use gh_cloud::threads::{ThreadError, ThreadSystem};
use gh_cloud::{gh_bounds, gh_exact_with, FiniteMetricSpace, GhError, SolverConfig};
use serde_json::{json, Value};

use crate::args::{Cli, CloudCommand, Command, GhdistArgs, ReproArgs, StabCommand, ThreadsCommand};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_REPRO_FAILED: i32 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
    /// Variant with its witness indices, e.g. `Asymmetric(0, 1)`.
    pub detail: Option<String>,
}

impl Failure {
    fn domain(kind: &str, message: String, detail: Option<String>) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            kind: kind.to_string(),
            message,
            detail,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({"kind": self.kind, "message": self.message});
        if let Some(d) = &self.detail {
            err["detail"] = json!(d);
        }
        json!({ "error": err })
    }
}

impl From<MetricError> for Failure {
    fn from(e: MetricError) -> Self {
        Failure::domain(e.kind(), e.to_string(), Some(format!("{e:?}")))
    }
}

impl From<GhError> for Failure {
    fn from(e: GhError) -> Self {
        let code = if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_DOMAIN };
        Failure {
            code,
            kind: e.kind().to_string(),
            message: e.to_string(),
            detail: None,
        }
    }
}

impl From<CloudError> for Failure {
    fn from(e: CloudError) -> Self {
        Failure::domain(e.kind(), e.to_string(), None)
    }
}

impl From<StabilizerError> for Failure {
    fn from(e: StabilizerError) -> Self {
        Failure::domain(e.kind(), e.to_string(), None)
    }
}

impl From<ThreadError> for Failure {
    fn from(e: ThreadError) -> Self {
        let code = match e {
            ThreadError::ThreadExplosion { .. } => EXIT_RESOURCE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            kind: e.kind().to_string(),
            message: e.to_string(),
            detail: None,
        }
    }
}

/// Result of a command: its JSON output and the exit code to use.
pub struct Outcome {
    pub output: Value,
    pub code: i32,
}

impl From<Value> for Outcome {
    fn from(output: Value) -> Self {
        Outcome { output, code: 0 }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        kind: "Io".into(),
        message: format!("{}: {e}", path.display()),
        detail: None,
    })?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::domain("BadJson", format!("{}: {e}", path.display()), None))
}

pub fn load_space(path: &Path) -> Result<FiniteMetricSpace, Failure> {
    Ok(FiniteMetricSpace::from_json_value(&read_json(path)?)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("outputs serialize")
}

pub fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let solver = |max_points| SolverConfig {
        max_points,
        max_nodes: cli.max_nodes,
    };
    match &cli.command {
        Command::Ghdist(a) => ghdist(a, &solver(a.max_points)).map(Outcome::from),
        Command::Cloud(c) => cloud_cmd(c).map(Outcome::from),
        Command::Stab(s) => stab(s).map(Outcome::from),
        Command::Threads(t) => threads(t, cli.seed).map(Outcome::from),
        Command::Validate { space } => {
            let s = load_space(space)?;
            Ok(json!({
                "valid": true,
                "n": s.len(),
                "diameter": format_rational(&s.diameter()),
            })
            .into())
        }
        Command::Repro(r) => Ok(repro(r, solver(r.solver_cap), cli.seed)),
    }
}

fn ghdist(a: &GhdistArgs, config: &SolverConfig) -> Result<Value, Failure> {
    let x = load_space(&a.left)?;
    let y = load_space(&a.right)?;
    let b = gh_bounds(&x, &y);
    if a.bounds {
        return Ok(json!({
            "value": null,
            "lower": format_rational(&b.lower),
            "upper": format_rational(&b.upper),
            "witness_pairs": null,
            "nodes_explored": 0,
        }));
    }
    let r = gh_exact_with(&x, &y, config)?;
    Ok(json!({
        "value": format_rational(&r.value),
        "lower": format_rational(&b.lower),
        "upper": format_rational(&b.upper),
        "witness_pairs": r.witness.pairs(),
        "nodes_explored": r.nodes_explored,
    }))
}

fn cloud_cmd(c: &CloudCommand) -> Result<Value, Failure> {
    match c {
        CloudCommand::Delta {
            seq_x,
            seq_y,
            window,
            base_x,
            base_y,
            csv,
        } => {
            let curve = cloud::delta_curve_with_base(seq_x, seq_y, *window, *base_x, *base_y)?;
            if let Some(path) = csv {
                write_csv(path, &curve).map_err(|e| Failure {
                    code: EXIT_USAGE,
                    kind: "Io".into(),
                    message: format!("{}: {e}", path.display()),
                    detail: None,
                })?;
            }
            Ok(to_json(&curve))
        }
        CloudCommand::Drop { prime, window } => Ok(to_json(&cloud::drop_witness(*prime, *window)?)),
        CloudCommand::Represent {
            lambda,
            q,
            phi,
            seq,
            window,
            floor,
        } => {
            let x = match (seq, q) {
                (Some(s), _) => s.clone(),
                (None, Some(q)) => RealSequenceSpace::geometric(q.clone(), phi.clone())
                    .map_err(CloudError::from)?,
                (None, None) => unreachable!("clap requires --q or --seq"),
            };
            let reps = cloud::representation_search(lambda, &x, *window, *floor)?;
            Ok(json!({
                "sequence": x.to_string(),
                "lambda": format_rational(lambda),
                "window": window,
                "floor": floor,
                "count": reps.len(),
                "solutions": reps,
            }))
        }
        CloudCommand::Scan {
            phi,
            q,
            lambda,
            window,
            floor,
        } => Ok(to_json(&cloud::gap_scan(phi, q, lambda, *window, *floor)?)),
        CloudCommand::Explore {
            phi,
            q,
            lambda,
            window,
            floor,
            tol,
        } => {
            let reps = cloud::near_representations_f64(phi, *q, *lambda, *window, *floor, *tol)?;
            Ok(json!({"exact": false, "tolerance": tol, "count": reps.len(), "near_solutions": reps}))
        }
    }
}

fn write_csv(path: &Path, curve: &cloud::DeltaCurve) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    for row in &curve.rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn stab(s: &StabCommand) -> Result<Value, Failure> {
    Ok(match s {
        StabCommand::Member { lambda, q } => {
            let alpha = stabilizer::stabilizer_member(lambda, *q)?;
            json!({"member": alpha.is_some(), "alpha": alpha})
        }
        StabCommand::RatioForm { lambda, q, bound } => {
            let f = stabilizer::ratio_form_decompose(lambda, *q, *bound)?;
            json!({"found": f.is_some(), "decomposition": f, "bound": bound})
        }
        StabCommand::RepunitEquation { q, n, m } => to_json(&stabilizer::solve_repunit_equation(*q, *n, *m)?),
        StabCommand::Gcd { q, n, m } => {
            json!({"gcd": stabilizer::gcd_qpow(*q, *n, *m)?.to_string()})
        }
        StabCommand::Square { q, n, m, bound } => {
            to_json(&stabilizer::square_ratio_test(*q, *n, *m, *bound)?)
        }
    })
}

fn threads(t: &ThreadsCommand, seed: u64) -> Result<Value, Failure> {
    let ThreadsCommand::Build {
        chain,
        depth,
        cap,
        sample,
    } = t;
    let mut ts = ThreadSystem::from_json_value(&read_json(chain)?)?;
    if let Some(d) = depth {
        ts = ts.truncated(*d)?;
    }
    let limit = match sample {
        Some(k) => {
            let mut picked = ts.sample_threads(&mut rng(seed), *k);
            picked.sort();
            picked.dedup();
            ts.quotient(picked)?
        }
        None => ts.limit_space(*cap)?,
    };
    let levels = ts.verify_projection_bound(&limit, &gh_cloud::exact::rat(0))?;
    Ok(json!({
        "depth": ts.depth(),
        "sampled": sample.is_some(),
        "thread_count": limit.threads.len(),
        "tail_bound": format_rational(ts.tail_bound()),
        "limit": limit.space.to_json_value(),
        "classes": limit.classes,
        "levels": levels,
    }))
}

fn repro(r: &ReproArgs, solver: SolverConfig, seed: u64) -> Outcome {
    let config = ReproConfig {
        solver,
        drop_window: r.drop_window,
        seed,
    };
    let outcomes = run_all(&config);
    for o in &outcomes {
        eprintln!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    Outcome {
        output: json!({
            "passed": outcomes.len() - failed,
            "failed": failed,
            "scenarios": outcomes,
        }),
        code: if failed > 0 { EXIT_REPRO_FAILED } else { 0 },
    }
}
