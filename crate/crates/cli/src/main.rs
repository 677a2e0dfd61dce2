mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { run::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot configure {n} threads: {e}");
            return ExitCode::from(run::EXIT_USAGE as u8);
        }
    }

    let start = Instant::now();
    let (output, code) = match run::dispatch(&cli) {
        Ok(o) => (o.output, o.code),
        Err(f) => (f.to_json(), f.code),
    };
    let output = if cli.report {
        json!({
            "command": cli.command.name(),
            "inputs": cli,
            "outputs": output,
            "timing_secs": start.elapsed().as_secs_f64(),
        })
    } else {
        output
    };
    let text = serde_json::to_string_pretty(&output).expect("json output");
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code as u8)
}
