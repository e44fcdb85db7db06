use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use horolat::Error;

mod commands;
mod config;
mod report;

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("convergence budget exhausted: {0}")]
    Budget(String),
    #[error(transparent)]
    Core(#[from] horolat::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) | CliError::Core(Error::SearchBudget { .. }) => 3,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(
                Error::InvalidGeneratingSet(_)
                | Error::GenerationFailure { .. }
                | Error::Degenerate { .. }
                | Error::DimensionMismatch { .. }
                | Error::InvalidCocycle(_)
                | Error::OutOfRegime(_)
                | Error::Precondition(_)
                | Error::Parse(_)
                | Error::Json(_),
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "horolat", version, about = "Horofunction boundaries of lattices and seminorms on twisted group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Truncation tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Directory for the JSON report and CSV tables.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Restrict `accept` to criteria whose number or name matches.
    #[arg(long, global = true)]
    check: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Word or norm lengths on a ball.
    LengthTable,
    /// Facets of the generator polytope with their subgroups.
    Facets,
    /// Busemann points of facets, their orbits and a boundary census.
    Boundary,
    /// Seminorm estimates and the differential bound for one element.
    Seminorm,
    /// Probe of the radius constant `‖f‖ ≤ c L(f)`.
    Radius,
    /// Boundary values and separation on the free group.
    Freegroup,
    /// The full acceptance suite.
    Accept,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::LengthTable => "length-table",
            Command::Facets => "facets",
            Command::Boundary => "boundary",
            Command::Seminorm => "seminorm",
            Command::Radius => "radius",
            Command::Freegroup => "freegroup",
            Command::Accept => "accept",
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
        cfg.acceptance.seed = s;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    if let Some(o) = &cli.out {
        cfg.out = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = load(cli)?;
    let report = match cli.command {
        Command::LengthTable => commands::length_table(&cfg)?,
        Command::Facets => commands::facets(&cfg)?,
        Command::Boundary => commands::boundary(&cfg)?,
        Command::Seminorm => commands::seminorm(&cfg)?,
        Command::Radius => commands::radius(&cfg)?,
        Command::Freegroup => commands::freegroup(&cfg)?,
        Command::Accept => commands::accept(&cfg, cli.check.as_deref())?,
    };
    report.emit(cli.command.name(), cfg.out.as_deref())?;
    if let Some(msg) = report.budget {
        return Err(CliError::Budget(msg));
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("horolat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
