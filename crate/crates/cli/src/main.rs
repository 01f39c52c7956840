use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;

use openbook_rho::parse::InputError;
use openbook_rho::{run, JobConfig, Outcome};

fn read_input(config: &JobConfig) -> Result<String, InputError> {
    let mut text = String::new();
    match &config.input {
        Some(path) => {
            text = std::fs::read_to_string(path).map_err(|e| InputError {
                field: "--input".into(),
                message: format!("cannot read {}: {e}", path.display()),
            })?;
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| InputError {
                    field: "<stdin>".into(),
                    message: format!("cannot read: {e}"),
                })?;
        }
    }
    Ok(text)
}

fn main() -> ExitCode {
    let config = JobConfig::parse();
    let outcome = match read_input(&config) {
        Ok(text) => run(&config, &text),
        Err(e) => Outcome::malformed(&e),
    };
    // A closed pipe is not worth a panic.
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status.code())
}
