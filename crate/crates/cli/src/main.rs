//! `hyperlin`: JSON reports on the linear-dependence structure of a
//! hypergraph.
//!
//! Exit codes: 0 success, 1 input error (unreadable file, bad syntax, bad
//! flags), 2 precondition failure of the requested analysis (the library
//! error name is printed on stderr), 3 a theorem check failed.

mod check;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::commands::Cli;
use crate::report::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Failure::Theorem { report, .. } = &failure {
                let _ = writeln!(std::io::stdout(), "{report}");
            }
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}
