mod args;
mod jobs;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use jobs::Failure;

const EXIT_BAD_INPUT: u8 = 2;
const EXIT_COMPUTATION: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;

/// Sizes the global pool from `MODULI_THREADS`; unset means available parallelism.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("MODULI_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("MODULI_THREADS must be a positive integer, got '{raw}'"))?;
    if n == 0 {
        return Err("MODULI_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_BAD_INPUT } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_BAD_INPUT);
    }
    let outcome = match &cli.command {
        Command::Pair(a) => jobs::pair_job(a, cli.timing),
        Command::Verlinde(a) => jobs::verlinde_job(a, cli.timing),
        Command::Oracle(o) => jobs::oracle_job(o, cli.timing),
        Command::Selftest => jobs::selftest_job(cli.timing),
    };
    match outcome {
        Ok(reports) => {
            let text = report::render(&reports, cli.format());
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(EXIT_COMPUTATION);
            }
            if reports.iter().any(report::JobReport::failed) {
                ExitCode::from(EXIT_CHECK_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_COMPUTATION)
        }
    }
}
