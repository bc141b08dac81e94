//! `subordkit` command line.
//!
//! Exit codes: 0 for PASS, ADVISORY or emitted data, 1 for a certified
//! failure, 2 for usage errors and unreadable or unwritable files.

mod args;
mod commands;
mod output;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Format};
use commands::Done;
use output::{emit, to_json, Envelope, SCHEMA};

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var("SUBORDKIT_THREADS") {
        let n: usize = value
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| anyhow::anyhow!("SUBORDKIT_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn finish<C: Serialize, R: Serialize>(
    cli: &Cli,
    config: &C,
    done: Done<R>,
    start: Instant,
    out: Option<&Path>,
) -> anyhow::Result<bool> {
    let wall_time_ms = (!cli.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    let envelope = Envelope {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name(),
        config,
        result: &done.result,
        wall_time_ms,
    };
    emit(&to_json(&envelope)?, out)?;
    Ok(done.failed)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    let start = Instant::now();
    match &cli.command {
        Command::VerifyTheorem(a) => finish(cli, a, commands::verify(a)?, start, a.out.as_deref()),
        Command::FindThreshold(a) => finish(cli, a, commands::threshold(a)?, start, a.out.as_deref()),
        Command::Falsify(a) => finish(cli, a, commands::falsify(a)?, start, a.out.as_deref()),
        Command::CheckFunction(a) => finish(cli, a, commands::check(a)?, start, a.out.as_deref()),
        Command::EmitBoundary(a) => {
            let done = commands::emit_boundary(a)?;
            // the CSV goes to --out; the report goes to stdout
            let report_path = if a.format == Format::Json { a.out.as_deref() } else { None };
            finish(cli, a, done, start, report_path)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
