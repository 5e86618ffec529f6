use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use asian_bounds::BoundSettings;
use asian_bounds_cli::{cmd_bounds, cmd_mc, cmd_table1, cmd_table2, CliError, PriceRequest, RunOptions, Table2Options};

/// Lower/upper bounds and Monte Carlo prices for Asian and VWAP call options.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Worker threads for Monte Carlo (default: all cores). Never changes results.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Quadrature nodes per panel for UB1 and LB2.
    #[arg(long, global = true, default_value_t = BoundSettings::default().nodes)]
    hermite_nodes: usize,
    /// Optimizer tolerance for z* and a*.
    #[arg(long, global = true, default_value_t = BoundSettings::default().opt_tol)]
    opt_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// LB2, LB1, UB1, midpoint and error for a request file.
    Bounds { file: PathBuf },
    /// Monte Carlo price for a request file with an mc block.
    Mc { file: PathBuf },
    /// Plain Asian table: T in {1, 9}, N in {10, 50, inf}, c in {0, 1}.
    Table1,
    /// VWAP table for sigma in {0.1, 0.5, 0.8}.
    Table2 {
        #[arg(long, default_value_t = Table2Options::default().g_paths)]
        g_paths: usize,
        #[arg(long, default_value_t = Table2Options::default().mc_paths)]
        mc_paths: usize,
        #[arg(long, default_value_t = Table2Options::default().seed)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    if cli.workers == Some(0) {
        return Err(CliError::Validation("--workers must be >= 1".into()));
    }
    if cli.hermite_nodes < 2 {
        return Err(CliError::Validation("--hermite-nodes must be >= 2".into()));
    }
    if cli.opt_tol.is_nan() || cli.opt_tol <= 0.0 {
        return Err(CliError::Validation("--opt-tol must be > 0".into()));
    }
    let opts = RunOptions {
        workers: cli.workers,
        bounds: BoundSettings { nodes: cli.hermite_nodes, opt_tol: cli.opt_tol, ..BoundSettings::default() },
    };
    match cli.command {
        Command::Bounds { file } => cmd_bounds(&PriceRequest::load(&file)?, &opts),
        Command::Mc { file } => cmd_mc(&PriceRequest::load(&file)?, &opts),
        Command::Table1 => cmd_table1(&opts),
        Command::Table2 { g_paths, mc_paths, seed } => cmd_table2(&Table2Options { g_paths, mc_paths, seed }, &opts),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
