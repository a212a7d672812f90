//! The `freeclt` command-line tool. Results go to stdout; a JSON run manifest
//! (argv, input hashes, version, seed, wall time) goes to stderr or to the
//! file named by `--manifest`.
//!
//! Exit codes: 0 success, 1 failed check or computation, 2 usage, 3 malformed
//! input, 4 size cap exceeded.

pub mod args;
mod commands;
mod manifest;
mod selftest;

use args::Cli;
use clap::error::ErrorKind;
use clap::Parser;
use freeclt::Error;
use manifest::{Inputs, Manifest};
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug)]
pub enum Failure {
    Library(Error),
    Io(String),
    /// A verification ran and reported a mismatch.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Library(Error::Schema { .. }) => EXIT_SCHEMA,
            Failure::Library(Error::SizeLimit { .. }) => EXIT_CAP,
            _ => EXIT_FAILURE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Library(e) => write!(f, "{e}"),
            Failure::Io(msg) | Failure::Check(msg) => f.write_str(msg),
        }
    }
}

/// Parses `argv`, runs the command, writes the payload to `out` and
/// diagnostics plus the manifest to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let started = Instant::now();
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut inputs = Inputs::default();
    let result = commands::execute(&cli.command, &mut inputs);
    let code = match &result {
        Ok(payload) => {
            if out.write_all(payload.as_bytes()).and_then(|_| out.flush()).is_err() {
                EXIT_FAILURE
            } else {
                0
            }
        }
        Err(Failure::Check(report)) => {
            let _ = out.write_all(report.as_bytes());
            let _ = writeln!(err, "error: verification failed");
            EXIT_FAILURE
        }
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    };
    let manifest = Manifest::new(&argv, inputs, commands::seed_of(&cli.command), code, started.elapsed());
    match &cli.manifest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, manifest.to_json() + "\n") {
                let _ = writeln!(err, "error: cannot write manifest {}: {e}", path.display());
                return if code == 0 { EXIT_FAILURE } else { code };
            }
        }
        None => {
            let _ = writeln!(err, "{}", manifest.to_json());
        }
    }
    code
}
