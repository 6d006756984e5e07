mod args;
mod commands;
mod grid;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("ba-arrange: cannot start {j} worker threads: {e}");
            return ExitCode::from(3);
        }
    }
    let g = &cli.global;
    let r = match &cli.command {
        Command::Construct { what } => commands::construct(g, what),
        Command::Certify(a) => commands::certify(g, a),
        Command::Hilbert(a) => commands::hilbert(g, a),
        Command::Scan { what } => commands::scan(g, what),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verified => {}
                Failure::Usage(msg) | Failure::Computation(msg) => eprintln!("ba-arrange: {msg}"),
            }
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
