//! `zerodist` command-line front end.
//!
//! Every command except `verify` resolves its flags into a run
//! configuration, computes its outputs in memory and only then writes them,
//! together with `manifest.json`, into `--out`.
//!
//! Exit codes: 0 success, 1 failed computation or verification, 2 usage or
//! input error.

mod args;
mod error;
mod figures;
mod manifest;
mod plot;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn execute(cli: &Cli) -> Result<(), CliError> {
    if let Command::Verify { dir } = &cli.command {
        return manifest::verify(dir.as_deref().unwrap_or(&cli.out));
    }
    let cfg = run::resolve(cli)?;
    let (arts, summary) = run::produce(&cfg)?;
    manifest::write_run(&cli.out, &cfg, &arts)?;
    for line in summary {
        println!("{line}");
    }
    for a in &arts {
        println!("wrote {}", cli.out.join(a.name).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zerodist: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
