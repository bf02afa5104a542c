mod args;
mod commands;
mod error;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use error::{CliError, CliResult};
use manifest::{FileDigest, RunManifest};

const THREADS_VAR: &str = "QSMOOTH_THREADS";

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        CliError::Config(format!(
            "{THREADS_VAR} must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn execute(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Train(a) => commands::run_train(a),
        Command::Certify(a) => commands::run_certify(a),
        Command::Distribution(a) => commands::run_distribution(a),
        Command::Bow(a) => commands::run_bow(a),
        Command::Replay(_) => Err(CliError::Config(
            "a replay cannot replay another replay".into(),
        )),
    }
}

/// Runs `command` and records it in a manifest.
fn run_recorded(argv: Vec<String>, command: Command) -> CliResult<RunManifest> {
    let outcome = execute(&command)?;
    let digests = |paths: &[std::path::PathBuf]| {
        paths
            .iter()
            .map(|p| FileDigest::of(p))
            .collect::<CliResult<Vec<_>>>()
    };
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        argv,
        working_dir: std::env::current_dir().map_err(|e| CliError::Data(e.to_string()))?,
        resolved: command,
        seeds: outcome.seeds,
        inputs: digests(&outcome.inputs)?,
        outputs: digests(&outcome.outputs)?,
    };
    manifest.write(&outcome.manifest)?;
    Ok(manifest)
}

fn replay(path: &std::path::Path) -> CliResult<()> {
    let recorded = RunManifest::read(path)?;
    std::env::set_current_dir(&recorded.working_dir)
        .map_err(|e| CliError::Data(format!("{}: {e}", recorded.working_dir.display())))?;
    let cli = Cli::try_parse_from(
        std::iter::once("qsmooth".to_string()).chain(recorded.argv.iter().cloned()),
    )
    .map_err(|e| CliError::Data(format!("manifest argv does not parse: {e}")))?;
    for input in &recorded.inputs {
        if FileDigest::of(&input.path)? != *input {
            return Err(CliError::Data(format!(
                "input {} changed since the recorded run",
                input.path.display()
            )));
        }
    }
    let rerun = run_recorded(recorded.argv.clone(), cli.command)?;
    let mismatched: Vec<_> = recorded
        .outputs
        .iter()
        .zip(&rerun.outputs)
        .filter(|(a, b)| a != b)
        .map(|(a, _)| a.path.display().to_string())
        .collect();
    if !mismatched.is_empty() || recorded.outputs.len() != rerun.outputs.len() {
        return Err(CliError::Data(format!(
            "outputs differ from the recorded run: {}",
            mismatched.join(", ")
        )));
    }
    println!("reproduced {} output files", rerun.outputs.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Replay(a) => replay(&a.manifest),
        command => run_recorded(std::env::args().skip(1).collect(), command).map(|_| ()),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qsmooth: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
