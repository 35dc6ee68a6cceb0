//! `impulse-front` command-line driver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod exit;
mod output;
mod tasks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use crate::config::RunConfig;
use crate::exit::CliError;

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "kebab-case")]
enum Command {
    Speed,
    CriticalDomain,
    Ray,
    Simulate,
    Oracle,
    Scenario,
    Sweep,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Speed => "speed",
            Command::CriticalDomain => "critical-domain",
            Command::Ray => "ray",
            Command::Simulate => "simulate",
            Command::Oracle => "oracle",
            Command::Scenario => "scenario",
            Command::Sweep => "sweep",
        }
    }
}

/// Spreading speeds, critical domains and simulations for impulsive
/// reaction-advection-diffusion models.
#[derive(Debug, Parser)]
#[command(name = "impulse-front", version)]
struct Cli {
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    /// Output directory; tables go to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", cli.config.display())))?;
    let cfg = RunConfig::parse(&text)?;
    if cfg.task.name() != cli.command.name() {
        return Err(CliError::Config(format!(
            "config describes task {:?} but command is {:?}",
            cfg.task.name(),
            cli.command.name()
        )));
    }
    let dir = cli.out.clone().or_else(|| cfg.output.dir.clone());
    if let Some(d) = &dir {
        std::fs::create_dir_all(d).map_err(|e| CliError::Config(format!("cannot create {}: {e}", d.display())))?;
    }
    let report = tasks::run(&cfg, usize::from(cli.jobs))?;
    report.emit(dir.as_deref())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("impulse-front: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
