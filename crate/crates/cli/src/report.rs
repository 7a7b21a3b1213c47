//! The versioned JSON envelope every command writes.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::args::OutputArgs;
use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "aw-forge/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn from_pass(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Serialize)]
struct Echo<'a> {
    name: &'a str,
    args: &'a [String],
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct Report<'a, T> {
    schema: &'static str,
    version: &'static str,
    command: Echo<'a>,
    status: Status,
    #[serde(flatten)]
    body: &'a T,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

#[derive(Serialize)]
struct ErrorBody {
    error: ErrorInfo,
}

#[derive(Serialize)]
struct ErrorInfo {
    kind: String,
    message: String,
}

/// Where and how a command reports.
pub struct Context {
    command: &'static str,
    args: Vec<String>,
    out: Option<PathBuf>,
    timing: bool,
    start: Instant,
}

impl Context {
    pub fn new(command: &'static str, args: Vec<String>, output: &OutputArgs) -> Self {
        Context { command, args, out: output.out.clone(), timing: output.timing, start: Instant::now() }
    }

    /// Writes `body` inside the standard envelope.
    pub fn emit<T: Serialize>(&self, status: Status, body: &T) -> CliResult<()> {
        let report = Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command: Echo { name: self.command, args: &self.args },
            status,
            body,
            timing: self.timing.then(|| Timing { elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3 }),
        };
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        self.write(&text)
    }

    pub fn emit_error(&self, err: &CliError) -> CliResult<()> {
        let body = ErrorBody { error: ErrorInfo { kind: err.kind(), message: err.to_string() } };
        self.emit(Status::Error, &body)
    }

    /// Writes raw text (CSV) to the output; timing goes to stderr.
    pub fn write_text(&self, text: &str) -> CliResult<()> {
        if self.timing {
            eprintln!("elapsed_ms: {:.3}", self.start.elapsed().as_secs_f64() * 1e3);
        }
        self.write(text)
    }

    fn write(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source }),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).map_err(CliError::Stdout)
            }
        }
    }
}
