//! The `infowords` command-line tool.
//!
//! Every subcommand returns an [`Output`] holding both a JSON value and an
//! aligned text rendering; `--json` picks the former. Exit status is 0 on
//! success, 1 when a verification fails or the convention lockfile does not
//! match, and 2 on malformed input.

pub mod cli;
mod commands;
pub mod conventions;
mod table;
pub mod verify;

use std::io::Write;

use clap::Parser;

pub use commands::execute;
pub use conventions::Conventions;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// Well-formed input outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Conventions(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Domain(_) => 2,
            CliError::Conventions(_) | CliError::Io(_) => 1,
        }
    }
}

pub fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub fn domain_err(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Clone)]
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    /// False when a verification in the output failed.
    pub ok: bool,
}

pub const INPUT_FORMATS: &str = "words `a^-1 b^2 a` or `Abba`; fractions `p/q`; continued fractions `[a0,a1,...]`; \
F-sequences `{n1,n2,...}`; matrices `a,b;c,d` with rational entries; ranges `lo:hi`";

pub fn main_with(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap_or_default())
            } else {
                write!(out, "{}", o.text)
            };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Input(_) = e {
                let _ = writeln!(err, "expected {INPUT_FORMATS}");
            }
            e.exit_code()
        }
    }
}
