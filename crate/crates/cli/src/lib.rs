//! Command-line front end: single curves, family tables, sweeps and the
//! verification suites.

pub mod args;
pub mod classify;
pub mod output;
pub mod prank;
pub mod sweep;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use fermat_prank::Error;

use crate::args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Exit code for a library error: internal invariant violations get 3,
/// everything else is a usage problem.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_USAGE
    }
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: format!("write failed: {err}"),
        }
    }
}

pub(crate) fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure {
            code: EXIT_INTERNAL,
            message: format!("cannot start worker threads: {e}"),
        })
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Prank(a) => prank::run(&a, out),
        Command::Table(a) => table::run(&a, out),
        Command::Verify(a) => verify::run(&a, out),
        Command::Sweep(a) => sweep::run(&a, out),
        Command::Classify(a) => classify::run(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
