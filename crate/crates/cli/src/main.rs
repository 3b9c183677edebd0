use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod output;

use config::Config;

/// Parastatistics workbench: gradings, Green-ansatz representations and
/// Jaynes-Cummings dynamics.
#[derive(Parser, Debug)]
#[command(name = "parastat", version)]
struct Cli {
    /// Flat key=value file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate bicharacters and commutation factors of a group and check
    /// their R-matrices.
    Classify(ClassifyArgs),
    /// Check the defining relations of an algebra on a Green-ansatz
    /// representation.
    Verify(RepArgs),
    /// Export matrix elements of the vacuum module.
    Fock(RepArgs),
    /// Spectrum and quench dynamics of a Jaynes-Cummings Hamiltonian.
    Jc(JcArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json or csv, for the classify and verify reports.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    /// Group descriptor such as Z2, Z2xZ2 or Z3xZ4.
    #[arg(long)]
    pub group: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    /// CCR, CAR, Ws, Was, PB, PF, PBF, PFB, SCR or SAR.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long = "modes-b")]
    pub modes_b: Option<usize>,
    #[arg(long = "modes-f")]
    pub modes_f: Option<usize>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Exponent matrix such as "1,1;1,0", "default" or "search".
    #[arg(long)]
    pub theta: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct JcArgs {
    /// dyn, dynstar or free.
    #[arg(long)]
    pub hamiltonian: Option<String>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long = "omega-b", allow_hyphen_values = true)]
    pub omega_b: Option<f64>,
    #[arg(long = "omega-f", allow_hyphen_values = true)]
    pub omega_f: Option<f64>,
    /// Complex numbers are written re+imj.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda2: Option<String>,
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    #[arg(long = "t-steps")]
    pub t_steps: Option<usize>,
    /// Initial ladder state "m,n,branch".
    #[arg(long)]
    pub init: Option<String>,
    /// Initial state as one "re,im" line per component.
    #[arg(long = "init-file")]
    pub init_file: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli
        .config
        .as_deref()
        .map(Config::load)
        .transpose()
        .and_then(|cfg| {
            let cfg = cfg.unwrap_or_default();
            match &cli.command {
                Command::Classify(a) => commands::classify::run(a, &cfg),
                Command::Verify(a) => commands::verify::run(a, &cfg),
                Command::Fock(a) => commands::fock::run(a, &cfg),
                Command::Jc(a) => commands::jc::run(a, &cfg),
            }
        });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
