use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thetaloc_cli::{run, CliError, RunOptions, TaskMode};

#[derive(Parser)]
#[command(name = "thetaloc", version, about = "Local geometry verdicts and generalized eigenform coefficients at weight-one theta points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tangent dimensions and étale/ramification verdicts.
    Verdicts(Common),
    /// Coefficients a_ℓ(f†) over a range of primes.
    Coefficients(Common),
    /// Whatever the task section of the config asks for.
    All(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    ell_min: Option<u64>,
    #[arg(long)]
    ell_max: Option<u64>,
    /// p-adic precision N, overriding the config.
    #[arg(long)]
    precision: Option<u32>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, c) = match cli.command {
        Command::Verdicts(c) => (Some(TaskMode::Verdicts), c),
        Command::Coefficients(c) => (Some(TaskMode::Coefficients), c),
        Command::All(c) => (None, c),
    };
    let code = match execute(mode, &c) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn execute(mode: Option<TaskMode>, c: &Common) -> Result<i32, CliError> {
    let bytes = std::fs::read(&c.config)
        .map_err(|e| CliError::Io { path: c.config.display().to_string(), message: e.to_string() })?;
    let opts = RunOptions { mode, ell_min: c.ell_min, ell_max: c.ell_max, precision: c.precision, threads: c.threads };
    let outcome = run(&bytes, &opts)?;
    let body = outcome.report.to_json();
    match &c.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?,
        None => print!("{body}"),
    }
    // timings stay out of the report body
    eprintln!("timings: {}", serde_json::to_string(&outcome.timings).expect("timings serialize"));
    for f in &outcome.report.diagnostics.failures {
        eprintln!("warning: ℓ = {}: {}", f.ell, f.message);
    }
    Ok(outcome.exit_code())
}
