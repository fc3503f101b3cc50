//! `dunkl-sym`: verification ledgers, representation matrices, monogenic
//! bases and group tables for the dihedral Dunkl–Dirac symmetry algebra.

mod config;
mod error;
mod group;
mod monogenics;
mod rep;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "dunkl-sym", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check operator identities on graded bases; streams JSON lines.
    Verify(verify::VerifyArgs),
    /// Representation matrices and the classification scan.
    #[command(subcommand)]
    Rep(rep::RepCommand),
    /// A basis of the degree-n monogenics.
    Monogenics(monogenics::MonogenicsArgs),
    /// Double covers of the reflection group.
    #[command(subcommand)]
    Group(group::GroupCommand),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("DUNKL_SYM_THREADS") else { return Ok(()) };
    let n: usize =
        v.trim().parse().map_err(|_| CliError::usage(format!("DUNKL_SYM_THREADS must be a non-negative integer, got {v:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::failure(e.to_string()))?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<bool, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Verify(a) => verify::run(a, out),
        Command::Rep(rep::RepCommand::Build(a)) => rep::build(a, out),
        Command::Rep(rep::RepCommand::Classify(a)) => rep::classify(a, out),
        Command::Monogenics(a) => monogenics::run(a, out),
        Command::Group(group::GroupCommand::Tables(a)) => group::tables(a, out),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    e.exit_code()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::usage(e.to_string().trim_end())),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = dispatch(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => fail(&CliError::failure("verification failed; see the report for the failing entries")),
        Err(e) => fail(&e),
    }
}
