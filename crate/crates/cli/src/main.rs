mod args;
mod commands;
mod error;
mod output;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::{CliError, ErrorRecord};
use output::SCHEMA;

const DEFAULT_SEED: u64 = 7;

/// `--seed`, then `FTQC_SEED`, then the fixed default.
fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("FTQC_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("FTQC_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let seed = resolve_seed(cli.seed)?;
    let (name, report) = match &cli.command {
        Command::Synth(a) => ("synth", commands::synth(a)?),
        Command::Kickback(a) => ("kickback", commands::kickback(a)?),
        Command::Qvr(a) => ("qvr", commands::qvr(a)?),
        Command::ParSim(a) => ("par-sim", commands::par_sim(a, seed)?),
        Command::Estimate2q(a) => ("estimate-2q", commands::estimate_2q(a)?),
        Command::Estimate1q(a) => ("estimate-1q", commands::estimate_1q(a)?),
        Command::Frontier(a) => ("frontier", commands::frontier(a)?),
        Command::Verify(a) => ("verify", commands::run_verify(a)?),
    };
    output::emit(&output::render(name, report)?, cli.out.as_deref())
}

fn fail(e: &CliError) -> ! {
    let record = ErrorRecord { schema: SCHEMA, error: e.kind(), message: e.to_string() };
    eprintln!("{}", serde_json::to_string(&record).expect("error record serializes"));
    std::process::exit(e.exit_code());
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => fail(&CliError::Usage(e.to_string().trim().to_string())),
    };
    if let Err(e) = run(cli) {
        fail(&e);
    }
}
