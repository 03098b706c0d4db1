mod args;
mod commands;
mod config;
mod output;
mod parse;
mod thresholds;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Bad flags, config files or parameters (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<plasma_core::Error>() {
            return if e.is_numeric() { EXIT_NUMERIC } else { EXIT_USAGE };
        }
    }
    EXIT_USAGE
}

fn dispatch(cmd: &Command, out: &std::path::Path) -> anyhow::Result<Status> {
    match cmd {
        Command::Eval(a) => commands::eval::run(a, out),
        Command::Verify(a) => commands::verify::run(a, out),
        Command::Converge(a) => commands::converge::run(a, out),
        Command::Sample(a) => commands::sample::run(a, out),
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.show_thresholds {
        print!("{}", thresholds::render());
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = cli.command.as_ref() else {
        eprintln!("error: a subcommand is required (eval, verify, converge, sample)");
        return ExitCode::from(EXIT_USAGE);
    };
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(EXIT_USAGE);
    }
    let result = match cli.threads {
        Some(t) => plasma_core::exec::with_threads(t, || dispatch(cmd, &cli.out)),
        None => dispatch(cmd, &cli.out),
    };
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
