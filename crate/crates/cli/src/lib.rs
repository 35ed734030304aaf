//! Command-line front end for `specker-core`.

pub mod args;
mod commands;
mod render;

use clap::Parser;
use serde_json::{json, Value};

use args::Cli;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values caught after parsing; exit 2.
    Usage(String),
    /// Exit 1.
    Domain(specker_core::Error),
    /// Exit 1.
    Io(String),
}

impl From<specker_core::Error> for CliError {
    fn from(e: specker_core::Error) -> Self {
        CliError::Domain(e)
    }
}

/// Exit status plus what the process should print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(status: i32, message: String) -> Self {
        Outcome {
            status,
            stdout: String::new(),
            stderr: message,
        }
    }
}

fn command_name(cli: &Cli) -> String {
    use args::*;
    let (group, sub) = match &cli.command {
        Group::Ks(KsCommand::Verify { .. }) => ("ks", "verify"),
        Group::Ks(KsCommand::Search { .. }) => ("ks", "search"),
        Group::Witness(WitnessCommand::Bound { .. }) => ("witness", "bound"),
        Group::Witness(WitnessCommand::Quantum { .. }) => ("witness", "quantum"),
        Group::Parable(ParableCommand::Run { .. }) => ("parable", "run"),
        Group::Parable(ParableCommand::Bound) => ("parable", "bound"),
        Group::Parable(ParableCommand::Machine) => ("parable", "machine"),
        Group::Detect(DetectCommand::Mz { .. }) => ("detect", "mz"),
        Group::Detect(DetectCommand::Exclusivity { .. }) => ("detect", "exclusivity"),
        Group::Detect(DetectCommand::Chsh { .. }) => ("detect", "chsh"),
        Group::Detect(DetectCommand::Separation { .. }) => ("detect", "separation"),
        Group::Counts(CountsCommand::Worlds { .. }) => ("counts", "worlds"),
        Group::Counts(CountsCommand::Histories { .. }) => ("counts", "histories"),
        Group::Counts(CountsCommand::Infuturabilien { .. }) => ("counts", "infuturabilien"),
        Group::Counts(CountsCommand::Boltzmann { .. }) => ("counts", "boltzmann"),
    };
    format!("{group} {sub}")
}

/// Parse `argv` (program name first), run the command and render its
/// result.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to stdout with status 0; everything else
            // clap rejects is a usage error.
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(2, text)
            } else {
                Outcome {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match commands::run(&cli) {
        Ok(body) => {
            let mut doc = serde_json::Map::new();
            doc.insert("schema".into(), json!("1"));
            doc.insert("command".into(), json!(command_name(&cli)));
            match body {
                Value::Object(fields) => doc.extend(fields),
                other => {
                    doc.insert("result".into(), other);
                }
            }
            Outcome {
                status: 0,
                stdout: render::render(&Value::Object(doc), cli.format),
                stderr: String::new(),
            }
        }
        Err(CliError::Usage(msg)) => Outcome::fail(2, format!("error: {msg}\n")),
        Err(CliError::Domain(e)) => Outcome::fail(1, format!("error: {e}\n")),
        Err(CliError::Io(msg)) => Outcome::fail(1, format!("error: {msg}\n")),
    }
}
