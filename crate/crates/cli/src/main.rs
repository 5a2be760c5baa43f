use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use juelab_cli::cli::{Cli, Command};
use juelab_cli::config::{ExperimentConfig, OutputSection};
use juelab_cli::run::{run, write_outputs};

/// Exit status for usage errors, matching clap's own.
const USAGE: u8 = 2;

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn usage<T>(r: Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn execute(cli: Cli) -> Result<ExitCode, Failure> {
    if let Some(t) = cli.threads {
        usage(
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .context("configuring the thread pool"),
        )?;
    }
    let from_file = match &cli.config {
        Some(p) => Some(usage(ExperimentConfig::load(p))?),
        None => None,
    };
    let mut config = match (&cli.command, from_file) {
        (Some(Command::Validate), Some(c)) => return Ok(validate(&c)),
        (Some(Command::Validate), None) => return Err(Failure::Usage(anyhow::anyhow!("validate needs --config"))),
        (Some(cmd), None) => usage(cmd.to_config(cli.seed.unwrap_or(0)))?.expect("experiment command"),
        (None, Some(c)) => c,
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(anyhow::anyhow!(
                "--config runs the experiment it describes; drop the subcommand (or use `validate`)"
            )))
        }
        (None, None) => return Err(Failure::Usage(anyhow::anyhow!("nothing to do: give a subcommand or --config"))),
    };
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    let binary = cli.command.as_ref().is_some_and(Command::wants_binary) || config.output.binary.is_some();
    if let Some(base) = &cli.out {
        config.output = OutputSection::from_base(base, binary);
    } else if cli.command.as_ref().is_some_and(Command::wants_binary) {
        return Err(Failure::Usage(anyhow::anyhow!("--binary needs --out")));
    }
    usage(config.kind().map_err(anyhow::Error::from))?;
    let diagnostics = config.diagnostics();
    if !diagnostics.is_empty() {
        return Err(Failure::Usage(anyhow::anyhow!("invalid config:\n  {}", diagnostics.join("\n  "))));
    }

    let start = Instant::now();
    let table = run(&config).map_err(Failure::Runtime)?;
    let wrote = write_outputs(&config, &table).map_err(Failure::Runtime)?;
    log::info!(
        "{} finished in {:.3} s (config {})",
        config.kind,
        start.elapsed().as_secs_f64(),
        &table.meta.config_hash[..12]
    );
    if !wrote {
        print_json(&table.to_json()).map_err(Failure::Runtime)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn validate(config: &ExperimentConfig) -> ExitCode {
    let d = config.diagnostics();
    if d.is_empty() {
        println!("ok: {} config is valid (hash {})", config.kind, config.hash());
        ExitCode::SUCCESS
    } else {
        for line in &d {
            println!("{line}");
        }
        ExitCode::FAILURE
    }
}

