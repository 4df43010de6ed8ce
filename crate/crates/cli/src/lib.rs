//! Command-line front end for the `epr-core` verifications.
//!
//! Every subcommand produces a [`CommandResult`]: named numeric rows, each
//! tagged with the equation or section it reproduces, plus an overall
//! pass flag where a check applies. [`main_with`] maps that to an exit status:
//! 0 on pass, 1 on a failed check or unwritable output, 2 on a usage error.

mod args;
mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use args::Cli;
pub use output::{emit, format_value, render, Format};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub value: f64,
    pub paper_anchor: String,
}

impl Row {
    pub fn new(name: impl Into<String>, value: f64, paper_anchor: impl Into<String>) -> Self {
        Self { name: name.into(), value, paper_anchor: paper_anchor.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub rows: Vec<Row>,
    /// `None` for commands that only report values.
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CommandResult {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), rows: Vec::new(), pass: None, notes: Vec::new() }
    }

    pub fn row(&mut self, name: impl Into<String>, value: f64, anchor: impl Into<String>) {
        self.rows.push(Row::new(name, value, anchor));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.rows.iter().find(|r| r.name == name).map(|r| r.value)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass == Some(false) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Clap(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => EXIT_PASS,
            CliError::Clap(_) => EXIT_USAGE,
            CliError::Output(_) => EXIT_FAIL,
        }
    }
}

impl From<epr_core::Error> for CliError {
    fn from(e: epr_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses `argv` (program name first) and runs the selected subcommand.
pub fn run<I, T>(argv: I) -> Result<(Cli, CommandResult), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let result = commands::execute(&cli)?;
    if let Some(bad) = result.rows.iter().find(|r| !r.value.is_finite()) {
        return Err(CliError::Usage(format!("non-finite value in row `{}`", bad.name)));
    }
    Ok((cli, result))
}

/// Full invocation: run, emit, and report errors. Returns the exit status.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (cli, result) = match run(argv) {
        Ok(ok) => ok,
        Err(CliError::Clap(e)) if e.exit_code() == 0 => {
            let _ = write!(stdout, "{e}");
            return EXIT_PASS;
        }
        Err(e) => {
            let _ = match &e {
                CliError::Clap(c) => write!(stderr, "{}", c.render()),
                other => writeln!(stderr, "error: {other}"),
            };
            return e.exit_code();
        }
    };
    let written = emit(&result, cli.format, cli.digits, cli.output.as_deref(), stdout);
    if let Err(e) = written {
        let err = CliError::Output(e);
        let _ = writeln!(stderr, "error: {err}");
        return err.exit_code();
    }
    result.exit_code()
}
