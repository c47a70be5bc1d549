//! Command-line front end: argument parsing, configuration layering and the
//! five subcommands. [`run`] returns the process exit status:
//!
//! | status | meaning                                   |
//! |--------|-------------------------------------------|
//! | 0      | success                                   |
//! | 1      | a verified property or table entry failed |
//! | 2      | usage or configuration error              |
//! | 3      | budget, range or precision limit reached  |

pub mod args;
pub mod config;
mod commands;
pub mod table1;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::error::ErrorKind;
use clap::Parser;
use coprime_compositions::Error;

pub use args::{Cli, Command, Format};
pub use config::FileConfig;
pub use table1::{TableEntry, TABLE1};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    if err.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

/// Parses arguments without running anything.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Runs the program and returns its exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_args(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn open_output(cli: &Cli) -> coprime_compositions::Result<Box<dyn Write + Send>> {
    Ok(match &cli.output {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn execute(cli: &Cli) -> coprime_compositions::Result<i32> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let threads = cli.threads.or(file.threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut out = open_output(cli)?;
    let status = pool.install(|| commands::dispatch(cli, &file, &mut out))?;
    out.flush()
        .map_err(|e| Error::Config(format!("cannot write output: {e}")))?;
    Ok(status)
}
