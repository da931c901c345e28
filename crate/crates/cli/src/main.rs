use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::LevelFilter;
use qree_cli::commands::{self, VerifyRequest};
use qree_cli::output::to_json;
use qree_cli::verify::VerifyConfig;
use qree_cli::Status;
use qree_core::oracle::OracleConfig;

#[derive(Parser)]
#[command(name = "qree", version, about = "Relative entropy of entanglement for two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Concurrence, EOF and the procedure's REE of a state file.
    Measure {
        file: PathBuf,
        /// Also run the numeric minimization.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Full procedure trace as JSON.
    Trace {
        file: PathBuf,
        /// Output path; standard output when absent.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare the procedure and the oracle with the closed forms on sampled family members.
    Verify {
        /// all, bd, gvp, gh, vpt or ht
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Matrix and mixing-weight tolerance; REE rows use a tenth of it.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Oracle restarts per sampled state.
        #[arg(long, default_value_t = 2)]
        oracle_restarts: usize,
        /// Verify one family state file instead of sampling.
        #[arg(long, conflicts_with_all = ["family", "samples"])]
        input: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Numeric REE by minimizing over separable states.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn init_logging() {
    let level = match std::env::var("QREE_LOG").as_deref() {
        Ok("quiet") => LevelFilter::Off,
        Ok("info") => LevelFilter::Info,
        Ok("debug") => LevelFilter::Debug,
        Ok(other) => {
            eprintln!("qree: ignoring QREE_LOG={other:?}, expected quiet, info or debug");
            LevelFilter::Warn
        }
        Err(_) => LevelFilter::Warn,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let (text, status) = match cli.command {
        Command::Measure { file, oracle, json } => {
            let (_, state) = commands::load(&file)?;
            let m = commands::measure(&state, oracle)?;
            (if json { to_json(&m)? } else { commands::render_measure(&m) }, Status::Success)
        }
        Command::Trace { file, output } => {
            let (input, state) = commands::load(&file)?;
            let json = commands::trace(input, &state)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, json)?;
                    log::info!("trace written to {}", path.display());
                    (String::new(), Status::Success)
                }
                None => (json, Status::Success),
            }
        }
        Command::Verify { family, samples, seed, tol, oracle_restarts, input, json } => {
            let cfg = VerifyConfig { samples, seed, tol, oracle_restarts };
            commands::verify(&VerifyRequest { family: &family, input: input.as_deref(), cfg, json })?
        }
        Command::Oracle { file, restarts, iters, tol, seed } => {
            let (_, state) = commands::load(&file)?;
            let cfg = OracleConfig { restarts, max_iters: iters, tol, seed };
            (commands::oracle(&state, &cfg)?, Status::Success)
        }
    };
    std::io::stdout().write_all(text.as_bytes())?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging();
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("qree: {e:#}");
            ExitCode::from(Status::InvalidInput as u8)
        }
    }
}
