//! `aw-forge`: build, verify and export realizations of the Racah and
//! Askey–Wilson algebras.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure, 2 on a
//! usage or precondition error (for example a vanishing denominator).

mod args;
mod commands;
mod error;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::report::Context;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let ctx = Context::new(cli.command.name(), echo, cli.command.output());

    let outcome = match &cli.command {
        Command::Verify(a) => commands::verify(a, &ctx),
        Command::Recurrence { realization, format } => commands::recurrence(realization, *format, &ctx),
        Command::Spectrum(a) => commands::spectrum(a, &ctx),
        Command::FamilyCheck(a) => commands::family_check(a, &ctx),
    };

    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            if let Err(write_err) = ctx.emit_error(&err) {
                eprintln!("error: {write_err}");
            }
            ExitCode::from(err.exit_code())
        }
    }
}
