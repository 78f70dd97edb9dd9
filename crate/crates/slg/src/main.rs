//! slg: computations with super Lie groups presented by Harish-Chandra pair
//! description files. Exit codes: 0 success, 1 validation failure, 2 usage
//! or parse error.

use clap::{Parser, Subcommand};
use slg::commands;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "slg",
    about = "Super Lie groups from Harish-Chandra pairs: validation, pullback tables, actions, stabilizers, invariants, and a Grassmann-point oracle",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the algebra, the reduced group, the pair, and the optional
    /// action and subpair blocks
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
    /// The twist decomposition table feeding the pullbacks
    GammaTable {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "human")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The multiplication pullback table of a coordinate section
    MulTable {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        section: String,
        #[arg(long, default_value = "human")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstruct the action pullback from the [action] block
    Action {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "human")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stabilizer subalgebra at a rational point of the domain
    Stabilizer {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated name=value assignments for the even generators
        #[arg(long, default_value = "")]
        point: String,
    },
    /// Transitivity rank test at a rational point
    Transitive {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "")]
        point: String,
    },
    /// Solve for invariant sections of the [subpair] block within a Laurent
    /// ansatz
    Invariants {
        #[arg(long)]
        file: PathBuf,
        /// Exponent bound of the Laurent ansatz
        #[arg(long, default_value_t = 2)]
        degree: i32,
    },
    /// Seeded Grassmann-point sweeps: group probes and the model comparison
    Oracle {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

fn emit(outcome: commands::Outcome, out: Option<&PathBuf>) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    ExitCode::from(outcome.status as u8)
}

fn machine_flag(format: &str) -> Result<bool, String> {
    match format {
        "human" => Ok(false),
        "machine" => Ok(true),
        other => Err(format!("format must be human or machine, found {other:?}")),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let loaded = commands::load_file(&file)?;
            Ok(emit(commands::cmd_validate(&loaded), None))
        }
        Cmd::GammaTable { file, format, out } => {
            let loaded = commands::load_file(&file)?;
            let machine = machine_flag(&format)?;
            Ok(emit(commands::cmd_gamma_table(&loaded, machine)?, out.as_ref()))
        }
        Cmd::MulTable {
            file,
            section,
            format,
            out,
        } => {
            let loaded = commands::load_file(&file)?;
            let machine = machine_flag(&format)?;
            Ok(emit(
                commands::cmd_mul_table(&loaded, &section, machine)?,
                out.as_ref(),
            ))
        }
        Cmd::Action { file, format, out } => {
            let loaded = commands::load_file(&file)?;
            let machine = machine_flag(&format)?;
            Ok(emit(commands::cmd_action(&loaded, machine)?, out.as_ref()))
        }
        Cmd::Stabilizer { file, point } => {
            let loaded = commands::load_file(&file)?;
            Ok(emit(commands::cmd_stabilizer(&loaded, &point)?, None))
        }
        Cmd::Transitive { file, point } => {
            let loaded = commands::load_file(&file)?;
            Ok(emit(commands::cmd_transitive(&loaded, &point)?, None))
        }
        Cmd::Invariants { file, degree } => {
            let loaded = commands::load_file(&file)?;
            Ok(emit(commands::cmd_invariants(&loaded, degree)?, None))
        }
        Cmd::Oracle { file, seed, count } => {
            let loaded = commands::load_file(&file)?;
            Ok(emit(commands::cmd_oracle(&loaded, seed, count)?, None))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
