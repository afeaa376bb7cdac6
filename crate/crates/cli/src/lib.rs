//! Document I/O, check drivers and counterexample mining for the `mftop`
//! command-line tool.

pub mod commands;
pub mod document;
pub mod error;
pub mod mine;
pub mod report;

use std::ffi::OsString;

use clap::Parser;
use serde_json::json;

pub use commands::{execute, Cli, Command};
pub use document::{parse_space, serialize_space, SpaceDocument};
pub use error::CliError;
pub use mine::{mine_counterexamples, MineConfig, MineReport};
pub use report::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            },
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err(CliError::Axioms(axioms)) => {
            // a document that parses but is not a topology still gets a report
            let mut report = Report::new(cli.command.name(), cli.seed);
            let violations: Vec<_> = axioms
                .violations
                .iter()
                .map(|v| json!({"code": v.code(), "message": v.to_string()}))
                .collect();
            report.check(
                &format!("{} axioms", axioms.kind),
                false,
                json!({"violations": violations, "truncated": axioms.truncated}),
            );
            Outcome {
                code: EXIT_FAILURE,
                stdout: report.render(cli.format),
                stderr: format!("error: input is not a topology: {axioms}\n"),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
