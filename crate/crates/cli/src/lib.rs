//! Front end for the BCOV engine: configuration, verification suites,
//! genus-g solves, q-expansions, BPS tables and JSON exports.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure,
//! 2 on a usage, configuration or I/O error.

pub mod arbitration;
pub mod artifact;
pub mod checks;
pub mod cli;
pub mod commands;
pub mod config;
pub mod report;
pub mod tower;

pub use config::{Command, Format, Module, RunConfig, Variant};
pub use report::{Arbitration, Check, Report, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, String),
    /// A computation failed for mathematical reasons.
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) | CliError::Io(..) => 2,
        }
    }
}

impl From<bcov_mirror::MirrorError> for CliError {
    fn from(e: bcov_mirror::MirrorError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<bcov_anomaly::AnomalyError> for CliError {
    fn from(e: bcov_anomaly::AnomalyError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<bcov_fields::FieldError> for CliError {
    fn from(e: bcov_fields::FieldError) -> Self {
        CliError::Math(e.to_string())
    }
}

/// Result of a run: what would go to stdout and stderr, and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let parsed = match cli::Cli::try_parse_from(args) {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let out = parsed.resolve().and_then(|cfg| commands::run(&cfg).map(|r| (cfg, r)));
    match out {
        Ok((cfg, report)) => {
            let text = report.render(cfg.format);
            let code = if report.all_passed() { 0 } else { 1 };
            match &cfg.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome { stdout: String::new(), stderr: String::new(), code },
                    Err(e) => {
                        let err = CliError::Io(path.display().to_string(), e.to_string());
                        Outcome { stdout: String::new(), stderr: format!("error: {err}\n"), code: err.exit_code() }
                    }
                },
                None => Outcome { stdout: text, stderr: String::new(), code },
            }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
