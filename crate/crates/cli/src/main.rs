use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use log::debug;

mod args;
mod commands;
mod output;
mod svg;

use args::Cli;

/// Exit status 1: bad input or an I/O problem.
const EXIT_DOMAIN: u8 = 1;
/// Exit status 2: the numerics failed on valid input.
const EXIT_NUMERIC: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] rings_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => EXIT_NUMERIC,
            _ => EXIT_DOMAIN,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn parse<I: IntoIterator<Item = String>>(argv: I) -> Result<Cli, ExitCode> {
    Cli::try_parse_from(argv).map_err(|e| {
        let _ = e.print();
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                ExitCode::SUCCESS
            }
            _ => ExitCode::from(EXIT_DOMAIN),
        }
    })
}

/// Replaces a `--config` invocation by the one the file describes. Global
/// flags given on the command line win over the file.
fn expand_config(cli: Cli) -> Result<Cli, CliError> {
    let Some(path) = &cli.config else { return Ok(cli) };
    if cli.command.is_some() {
        return Err(CliError::Usage("--config replaces the subcommand; give one or the other".into()));
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let config: serde_json::Value = serde_json::from_str(&text)?;
    let mut overrides = Vec::new();
    if let Some(out) = &cli.out {
        overrides.push(("out", out.clone()));
    }
    if let Some(threads) = cli.threads {
        overrides.push(("threads", threads.to_string()));
    }
    if let Some(format) = cli.format {
        let name = clap::ValueEnum::to_possible_value(&format).expect("no skipped variants");
        overrides.push(("format", name.get_name().to_owned()));
    }
    let argv = args::config_argv(&config, &overrides)?;
    debug!("config expands to {argv:?}");
    Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cli = expand_config(cli)?;
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Usage("no subcommand given; see `rings --help`".into()));
    };
    debug!("running {}", command.name());
    commands::run(command, cli.out.as_deref(), cli.format)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match parse(std::env::args()) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
