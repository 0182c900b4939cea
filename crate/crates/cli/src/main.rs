//! `snq` — quadrature moments and signal-to-quantum-noise ratios of displaced
//! squeezed Fock states, with closed forms cross-checked against a truncated
//! Fock-space simulation.
//!
//! Exit codes: 0 success, 1 validation/property failure, 2 usage or parameter
//! error. Output is deterministic: identical flags and seed give
//! byte-identical bytes.

mod commands;
mod output;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::StatePoint;
use output::{record_to_json, records_to_csv, records_to_json, Record};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "snq",
    version,
    about = "Signal-to-quantum-noise ratios of displaced squeezed Fock states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Numeric tolerance for oracle comparisons and operator accuracy
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form moments of D(α)S(z)|n⟩, optionally with the numeric oracle
    Moments {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_im: f64,
        /// Squeeze magnitude r ≥ 0
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
        /// Squeeze phase φ in radians
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        /// Also measure the moments on the truncated Fock simulation
        #[arg(long)]
        numeric: bool,
        /// Fock cutoff: "auto" for the doubling test, or an explicit dimension
        #[arg(long, default_value = "auto")]
        cutoff: String,
    },
    /// Signal-to-quantum-noise ratio ⟨X⟩²/(ΔX)² of one state
    Snr {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_im: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value = "auto")]
        cutoff: String,
    },
    /// Maximum SNR under the mean-photon-number budget, both state families
    Optimize {
        /// Mean photon number budget N_s
        #[arg(long, allow_negative_numbers = true)]
        ns: f64,
        /// Fock excitation n
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Cross-check with the two derivative-free maximizations
        #[arg(long)]
        numeric: bool,
    },
    /// Optimal-SNR decay relative to the n = 0 baseline, one row per n
    Figure1 {
        #[arg(long, allow_negative_numbers = true)]
        ns: f64,
        #[arg(long)]
        n_max: usize,
    },
    /// Run the seeded property suite; exit 1 if any property fails
    Validate {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random cases per property
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn emit(cli: &Cli, rows: &[Record]) -> Result<(), String> {
    let text = match (cli.format, rows.len()) {
        (Format::Json, 1) => record_to_json(&rows[0]),
        (Format::Json, _) => records_to_json(rows),
        (Format::Csv, _) => records_to_csv(rows),
    };
    match &cli.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn error_record(err: &snq_core::Error) -> Record {
    Record::new().str("error", &err.to_string())
}

fn run(cli: &Cli) -> Result<u8, String> {
    if !cli.tol.is_finite() || cli.tol <= 0.0 {
        return Err(format!("--tol must be a positive number, got {}", cli.tol));
    }
    match &cli.command {
        Command::Moments { n, alpha_re, alpha_im, r, phi, numeric, cutoff } => {
            let point =
                StatePoint::new(*n, *alpha_re, *alpha_im, *r, *phi).map_err(|e| e.to_string())?;
            match commands::cmd_moments(&point, *numeric, cutoff, cli.tol) {
                Ok(record) => {
                    emit(cli, &[record])?;
                    Ok(0)
                }
                Err(err) => {
                    emit(cli, &[error_record(&err)])?;
                    Ok(2)
                }
            }
        }
        Command::Snr { n, alpha_re, alpha_im, r, phi, numeric, cutoff } => {
            let point =
                StatePoint::new(*n, *alpha_re, *alpha_im, *r, *phi).map_err(|e| e.to_string())?;
            match commands::cmd_snr(&point, *numeric, cutoff, cli.tol) {
                Ok(record) => {
                    emit(cli, &[record])?;
                    Ok(0)
                }
                Err(err) => {
                    emit(cli, &[error_record(&err)])?;
                    Ok(2)
                }
            }
        }
        Command::Optimize { ns, n, numeric } => {
            match commands::cmd_optimize(*ns, *n, *numeric, cli.tol) {
                Ok(record) => {
                    emit(cli, &[record])?;
                    Ok(0)
                }
                Err(err) => {
                    emit(cli, &[error_record(&err)])?;
                    Ok(2)
                }
            }
        }
        Command::Figure1 { ns, n_max } => match commands::cmd_figure1(*ns, *n_max) {
            Ok(rows) => {
                emit(cli, &rows)?;
                Ok(0)
            }
            Err(err) => Err(err.to_string()),
        },
        Command::Validate { seed, cases } => {
            if *cases == 0 {
                return Err("--cases must be at least 1".into());
            }
            let (rows, all_pass) = validate::run(*seed, *cases, cli.tol);
            emit(cli, &rows)?;
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
