//! File formats, renderers and the `tilesum` command line.

pub mod commands;
pub mod formats;
pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{Cli, Verdict};

/// The usage-error exit path for problems clap cannot see, such as a flag
/// that is only required when another one is absent.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Summaries go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match commands::dispatch(cli, out) {
        Ok(Verdict::Yes) => EXIT_OK,
        Ok(Verdict::No) => EXIT_NO,
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            let _ = writeln!(err, "usage error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}
