mod args;
mod commands;
mod input;
mod output;
mod play;

use std::io;
use std::process::ExitCode;

use clap::Parser;
use rado_core::Error;

use args::{Cli, Command};
use commands::Ctx;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) => 2,
        Some(Error::CapExceeded { .. }) => 3,
        Some(
            Error::InvalidInput(_)
            | Error::IllegalMove { .. }
            | Error::Divisibility(..)
            | Error::Precondition(_)
            | Error::ChainOnBoard(_)
            | Error::DegenerateData(_)
            | Error::NotFullRank { .. }
            | Error::DegeneratePartition { .. },
        ) => 4,
        _ => 1,
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let mut ctx = Ctx { seed: cli.seed, format: cli.format, cap: cli.cap, out: &mut lock };
    match &cli.command {
        Command::Analyze(a) => commands::analyze_cmd(&mut ctx, a),
        Command::Enumerate(a) => commands::enumerate_cmd(&mut ctx, a),
        Command::Mu(a) => commands::mu_cmd(&mut ctx, a),
        Command::Detect(a) => commands::detect_cmd(&mut ctx, a),
        Command::Solve(a) => commands::solve_cmd(&mut ctx, a),
        Command::Simulate(a) => commands::simulate_cmd(&mut ctx, a, &mut io::stderr()),
        Command::Play(a) => play::play_cmd(&mut ctx, a, &mut io::stdin().lock()),
    }?;
    ctx.out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
