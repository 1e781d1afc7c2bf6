use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spectra_cli::config::check_tolerance;
use spectra_cli::{parse_config, run, Command, Format};

/// Spectra of exactly solvable non-central potentials.
#[derive(Parser, Debug)]
#[command(name = "spectra", version)]
struct Cli {
    command: Command,
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `[run] format`.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Overrides `[run] tolerance`.
    #[arg(long)]
    tolerance: Option<f64>,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("spectra: cannot read {}: {e}", cli.config.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("spectra: {}: {e}", cli.config.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(t) = cli.tolerance {
        if let Err(e) = check_tolerance("--tolerance", t) {
            eprintln!("spectra: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let report = match run(cli.command, &cfg, cli.tolerance) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("spectra: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let text = report.render(cli.format.unwrap_or(cfg.run.format));
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("spectra: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("spectra: verification failed");
        ExitCode::from(EXIT_FAIL)
    }
}
