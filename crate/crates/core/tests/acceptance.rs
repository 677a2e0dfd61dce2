//! Acceptance suite: every criterion with its tolerance and time limit.
//!
//! Runs without the libtest harness so the pass/fail table is always
//! printed, and exits non-zero if any criterion fails.

use gh_cloud::repro::{run_all, ReproConfig};

fn main() {
    let config = ReproConfig::default();
    println!("acceptance criteria (seed {:#x})", config.seed);
    let outcomes = run_all(&config);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
