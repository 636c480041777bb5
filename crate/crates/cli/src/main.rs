mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Failures surfaced to the user, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// A library precondition or computation failed.
    Domain(chamberforge::Error),
    /// Malformed argument values.
    Usage(String),
    /// Files that cannot be read or written.
    Io(String),
}

impl From<chamberforge::Error> for CliError {
    fn from(e: chamberforge::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Domain(e) => serde_json::json!({ "error": e, "message": e.to_string() }),
            CliError::Usage(m) => serde_json::json!({ "error": { "kind": "usage" }, "message": m }),
            CliError::Io(m) => serde_json::json!({ "error": { "kind": "io" }, "message": m }),
        }
    }
}

/// A command result in both renderings.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.weyl_cap {
        // Read once per process by the Weyl group cache; set before any use.
        std::env::set_var(chamberforge::rootdata::WEYL_CAP_ENV, cap.to_string());
    }
    match commands::run(&cli) {
        Ok(out) => {
            let mut body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON output")
            } else {
                out.text
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
