//! `nctap`: generate, solve, certify and cross-check 2NC-TAP instances.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nctap", version, about = "Greedy 2NC-TAP solver with dual-fitting certificates and exact oracles")]
struct Cli {
    /// Machine-readable output with exact rationals only.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the random family.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Multiply every cost by this rational before use.
    #[arg(long, global = true, value_name = "P/Q")]
    scale: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write an instance of a named family.
    Generate(GenerateArgs),
    /// Run the greedy algorithm and certify the result.
    Solve {
        instance: PathBuf,
        /// Where to write the certificate.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Exact LP and/or IP optimum.
    Exact {
        instance: PathBuf,
        #[arg(long)]
        lp: bool,
        #[arg(long)]
        ip: bool,
        #[arg(long, value_enum, default_value_t = Model::Partition)]
        model: Model,
    },
    /// Re-check a certificate against its instance.
    Verify { instance: PathBuf, certificate: PathBuf },
    /// Inflate a graph (or the graph of a TAP instance) into a 2NCSS instance.
    Inflate {
        instance: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Where to write the inflation map; defaults next to the output.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Integrality ratio of the cut LP and of the partition LP of the inflation.
    Ratio { instance: PathBuf },
    /// Write an LP model in the CPLEX LP text format.
    LpExport {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Partition)]
        model: Model,
        /// Every row instead of the pool at convergence.
        #[arg(long)]
        full: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Partition LP and 2-node connectivity.
    Partition,
    /// Cut LP and 2-edge connectivity.
    Cut,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    family: String,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    max_lambda: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 1)]
    cost_lo: u32,
    #[arg(long, default_value_t = 10)]
    cost_hi: u32,
    #[arg(long, default_value_t = 1)]
    cost_denom: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options {
        json: cli.json,
        seed: cli.seed,
        scale: cli.scale,
    };
    let result = match cli.command {
        Command::Generate(args) => commands::generate(&opts, &args),
        Command::Solve { instance, cert } => commands::solve(&opts, &instance, cert.as_deref()),
        Command::Exact { instance, lp, ip, model } => commands::exact(&opts, &instance, lp, ip, model),
        Command::Verify { instance, certificate } => commands::verify(&opts, &instance, &certificate),
        Command::Inflate { instance, out, map } => commands::inflate(&opts, &instance, &out, map.as_deref()),
        Command::Ratio { instance } => commands::ratio(&opts, &instance),
        Command::LpExport { instance, model, full, out } => {
            commands::lp_export(&opts, &instance, model, full, out.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
