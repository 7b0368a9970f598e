use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gamma_median::cli::{
    cmd_figure, cmd_median_range, cmd_median_single, cmd_search, cmd_table, cmd_verify,
    validate_figure_id, SearchTarget, TableKind,
};
use gamma_median::search::SearchConfig;
use gamma_median::Error;

/// Median of the gamma distribution: high-precision solver, tight
/// closed-form bounds, interpolated approximations, and the verification
/// suite behind them.
#[derive(Parser)]
#[command(name = "gamma-median", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the median at one shape (--k) or over a geometric grid
    /// (--k-min/--k-max), printing CSV
    Median {
        /// Single shape parameter
        #[arg(long, conflicts_with_all = ["k_min", "k_max"])]
        k: Option<f64>,
        /// Grid start (requires --k-max)
        #[arg(long, requires = "k_max")]
        k_min: Option<f64>,
        /// Grid end (requires --k-min)
        #[arg(long, requires = "k_min")]
        k_max: Option<f64>,
        /// Grid density
        #[arg(long, default_value_t = 100)]
        per_decade: usize,
    },
    /// Print the bound catalog (table1) or the one-parameter interpolated
    /// bounds (table2) as CSV
    Table {
        /// table1 | table2
        #[arg(long)]
        which: String,
        /// Grid density behind the numeric table2 rows
        #[arg(long, default_value_t = 100)]
        per_decade: usize,
    },
    /// Write the CSV data underlying one of the eight figures
    Figure {
        /// Figure id, 1..=8
        #[arg(long)]
        fig: u8,
        /// Output file path
        #[arg(long)]
        out: PathBuf,
        /// Grid density
        #[arg(long, default_value_t = 100)]
        per_decade: usize,
    },
    /// Run verification claims and print one row per claim
    Verify {
        /// "all" or a comma-separated list of claim ids
        #[arg(long, default_value = "all")]
        claims: String,
        /// Grid density
        #[arg(long, default_value_t = 100)]
        per_decade: usize,
    },
    /// Re-derive a numerically-specified parameter by independent search
    Search {
        /// L0 | L1 | arctan-lower | minimax-rel | minimax-abs
        #[arg(long)]
        target: String,
        /// Grid density
        #[arg(long, default_value_t = 100)]
        per_decade: usize,
    },
}

const EXIT_CLAIM_FAILURE: u8 = 1;
const EXIT_BAD_ARGUMENT: u8 = 2;
const EXIT_NUMERIC_FAILURE: u8 = 3;
const EXIT_IO_FAILURE: u8 = 4;

fn numeric_exit(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::UnknownRow(_) => EXIT_BAD_ARGUMENT,
        Error::Convergence(_) | Error::Search(_) | Error::Construction(_) => EXIT_NUMERIC_FAILURE,
    }
}

fn fail(err: Error) -> (u8, String) {
    (numeric_exit(&err), err.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    match cli.command {
        Command::Median {
            k,
            k_min,
            k_max,
            per_decade,
        } => {
            let table = match (k, k_min, k_max) {
                (Some(k), None, None) => cmd_median_single(k).map_err(fail)?,
                (None, Some(lo), Some(hi)) => {
                    cmd_median_range(lo, hi, per_decade).map_err(fail)?
                }
                _ => {
                    return Err((
                        EXIT_BAD_ARGUMENT,
                        "provide either --k or both --k-min and --k-max".into(),
                    ))
                }
            };
            print!("{}", table.to_csv());
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { which, per_decade } => {
            let kind = match which.as_str() {
                "table1" => TableKind::Table1,
                "table2" => TableKind::Table2,
                other => {
                    return Err((
                        EXIT_BAD_ARGUMENT,
                        format!("--which must be table1 or table2, got '{other}'"),
                    ))
                }
            };
            let config = SearchConfig::with_points_per_decade(per_decade);
            config.validate().map_err(fail)?;
            let table = cmd_table(kind, &config).map_err(fail)?;
            print!("{}", table.to_csv());
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure {
            fig,
            out,
            per_decade,
        } => {
            validate_figure_id(fig).map_err(fail)?;
            let config = SearchConfig::with_points_per_decade(per_decade);
            config.validate().map_err(fail)?;
            let table =
                cmd_figure(fig, &config).map_err(|e| (EXIT_NUMERIC_FAILURE, e.to_string()))?;
            std::fs::write(&out, table.to_csv())
                .map_err(|e| (EXIT_IO_FAILURE, format!("cannot write {}: {e}", out.display())))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { claims, per_decade } => {
            let results = cmd_verify(&claims, per_decade).map_err(fail)?;
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.pass;
                println!(
                    "{:<28} criterion {:>2}  {}  {}  [required: {}]",
                    r.id,
                    r.criterion,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.measured,
                    r.threshold,
                );
            }
            let failures = results.iter().filter(|r| !r.pass).count();
            println!(
                "{} claims run, {} passed, {} failed",
                results.len(),
                results.len() - failures,
                failures
            );
            if all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_CLAIM_FAILURE))
            }
        }
        Command::Search { target, per_decade } => {
            let target =
                SearchTarget::parse(&target).map_err(|e| (EXIT_BAD_ARGUMENT, e.to_string()))?;
            let config = SearchConfig::with_points_per_decade(per_decade);
            config.validate().map_err(fail)?;
            let table = cmd_search(target, &config)
                .map_err(|e| (EXIT_NUMERIC_FAILURE, e.to_string()))?;
            print!("{}", table.to_csv());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
