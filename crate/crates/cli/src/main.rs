//! `schurc`: enumeration, block weights, compression plans, exact protocol
//! errors, parameter sweeps and dense cross-checks from the command line.
//!
//! Exit codes: 0 success, 1 a FAIL verdict or internal mismatch, 2 usage or
//! input error, 3 not applicable or unsupported, 4 resource cap exceeded.

mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{expand_config, Cli, Command};
use commands::{Failure, Outcome};

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Dims(a) => commands::dims(a),
        Command::Qdist(a) => commands::qdist(a),
        Command::Plan(a) => commands::plan(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::OracleCheck(a) => commands::oracle(a),
    }
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = outcome
                .report
                .render(cli.format, &mut stdout)
                .and_then(|_| stdout.flush())
            {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
