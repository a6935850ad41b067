//! `pickzeta`: Pick-matrix certificates, disc and half-plane interpolation
//! and finite realizations from the command line.

mod commands;
mod config;
mod error;
mod io;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{CounterexampleArgs, PickCheckArgs, RealizeArgs, SearchDirichletArgs, SolveArgs, ZetaArgs};
use config::{Format, RunConfig};
use error::{CliError, EXIT_INPUT};
use report::{error_body, Report};

#[derive(Debug, Parser)]
#[command(name = "pickzeta", version, about = "Nevanlinna-Pick certificates for the Szegö-Dirichlet kernel")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, env = "PICKZETA_CONFIG")]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// PSD tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Feature truncation N.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate ζ with a certified error bound.
    Zeta(ZetaArgs),
    /// Pick-matrix certificates for an interpolation problem.
    PickCheck(PickCheckArgs),
    /// Two-point counterexample certificates for powers of the ζ kernel.
    Counterexample(CounterexampleArgs),
    /// Solve a half-plane interpolation problem, or evaluate a saved solution.
    Solve(SolveArgs),
    /// Build a finite realization of a Dirichlet polynomial, or verify one.
    Realize(RealizeArgs),
    /// Rank solutions by their distance from short Dirichlet polynomials.
    SearchDirichlet(SearchDirichletArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Zeta(_) => "zeta",
            Command::PickCheck(_) => "pick-check",
            Command::Counterexample(_) => "counterexample",
            Command::Solve(_) => "solve",
            Command::Realize(_) => "realize",
            Command::SearchDirichlet(_) => "search-dirichlet",
        }
    }
}

fn run_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(t) = cli.tol {
        cfg.psd_tol = t;
    }
    if let Some(n) = cli.trunc {
        cfg.trunc = n;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = run_config(cli)?;
    let tol_given = cli.tol.is_some();
    match &cli.command {
        Command::Zeta(a) => commands::zeta(a, &cfg),
        Command::PickCheck(a) => commands::pick_check(a, &cfg, tol_given),
        Command::Counterexample(a) => commands::counterexample(a, &cfg),
        Command::Solve(a) => commands::solve(a, &cfg, tol_given),
        Command::Realize(a) => commands::realize(a, &cfg),
        Command::SearchDirichlet(a) => commands::search_dirichlet(a, &cfg, tol_given),
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn fail(command: &str, err: &CliError) -> ExitCode {
    emit(&error_body(command, err));
    ExitCode::from(err.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let mut err = CliError::usage(e.kind().to_string());
            err.exit_code = EXIT_INPUT;
            return fail("", &err);
        }
    };
    let name = cli.command.name();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => return fail(name, &e),
    };
    let text = report.render(report.config.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = io::write_atomic(path, &text) {
                return fail(name, &e);
            }
        }
        None => emit(&text),
    }
    ExitCode::from(report.exit_code as u8)
}
