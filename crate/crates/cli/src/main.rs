//! `gtrs`: construct, verify and catalogue Hermitian self-dual (+)-GTRS
//! codes.
//!
//! Exit codes: 0 success, 1 a verification did not hold, 2 usage or
//! precondition error (reported as a JSON object on stdout).

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use commands::Status;
use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "gtrs", version, about = "Generalized twisted Reed-Solomon codes over finite fields")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a self-dual (+)-GTRS family from a coset of GF(q) in GF(q^2).
    Construct(commands::construct::ConstructArgs),
    /// Check Hermitian self-duality of a code file.
    Verify(commands::verify::VerifyArgs),
    /// Report [n, k, d] and the MDS/AMDS/NMDS class of a code file.
    Classify(commands::classify::ClassifyArgs),
    /// Reproduce the q = 7 reference catalogue.
    Table(commands::table::TableArgs),
    /// Compute the dual of a code file.
    Dual(commands::dual::DualArgs),
    /// Enumerate constructions into a catalog.
    Sweep(commands::sweep::SweepArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.config;
    let result = cfg.validate().and_then(|()| match &cli.command {
        Command::Construct(a) => commands::construct::run(a, cfg),
        Command::Verify(a) => commands::verify::run(a, cfg),
        Command::Classify(a) => commands::classify::run(a, cfg),
        Command::Table(a) => commands::table::run(a, cfg),
        Command::Dual(a) => commands::dual::run(a, cfg),
        Command::Sweep(a) => commands::sweep::run(a, cfg),
    });
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            let obj = serde_json::json!({ "error": e.to_string(), "causes": &chain[1..] });
            println!("{obj}");
            ExitCode::from(2)
        }
    }
}
