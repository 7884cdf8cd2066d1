//! Command-line front end: problem files in, tables/CSV/JSON out.
//!
//! Exit codes: 0 success, 1 validation failure, 2 inadmissible parameters,
//! 3 numerical failure.

mod output;
mod problem;
mod verify;

use anyhow::Context;
use clap::{ArgAction, Args, Parser, Subcommand};
use problem::ProblemFile;
use qpapprox_core::{
    analyze, best_sequence, check_diophantine, column_error, AnalysisOptions, Error as CoreError,
};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "qpapprox",
    about = "Approximate quasiperiodic trigonometric sums by periodic ones, with certified error bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Period vector, comma separated (overrides the file)
    #[arg(long = "L", value_delimiter = ',', allow_hyphen_values = true)]
    lengths: Option<Vec<i64>>,
    /// Grid vector, comma separated (overrides the file)
    #[arg(long = "G", value_delimiter = ',')]
    nodes: Option<Vec<i64>>,
    /// Grid rule: "10L" or "2Lmax+10" (overrides the file)
    #[arg(long = "G-rule")]
    g_rule: Option<String>,
    /// Window order (overrides the file)
    #[arg(long)]
    eta: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the coefficient system, measure the sup error and both bounds
    Approximate {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Samples per oscillation for the sup search
        #[arg(long = "sup-grid")]
        sup_grid: Option<usize>,
        /// Use the sharpened x1 in the analytic bound
        #[arg(long = "sharpened-x1", default_value_t = true, action = ArgAction::Set)]
        sharpened_x1: bool,
        /// Emit machine-readable JSON on stdout
        #[arg(long)]
        json: bool,
        /// Also write the per-exponent table as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Analytic bounds and admissibility only (no sup search)
    Bounds {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "sharpened-x1", default_value_t = true, action = ArgAction::Set)]
        sharpened_x1: bool,
        #[arg(long)]
        json: bool,
    },
    /// Residual error e(L) for every period in a range, with record flags
    Scan {
        file: PathBuf,
        /// Dimension index (0-based)
        #[arg(long)]
        dim: usize,
        /// Period range MIN:MAX (inclusive)
        #[arg(long)]
        range: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Best simultaneous approximation records in a range
    #[command(name = "best-seq")]
    BestSeq {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        range: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Recompute a bundled reference table and diff every cell
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// Which table: "t1" (one-dimensional) or "t2" (three-dimensional)
        table: String,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    // die quietly when a downstream pipe closes (e.g. piping into `head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            err.downcast_ref::<CoreError>()
                .map_or(1, CoreError::exit_code)
        }
    });
}

fn parse_range(text: &str) -> anyhow::Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| anyhow::anyhow!("range must be MIN:MAX, got {text:?}"))?;
    Ok((
        lo.trim().parse().context("range minimum")?,
        hi.trim().parse().context("range maximum")?,
    ))
}

fn exponent_column(file: &ProblemFile, dim: usize) -> anyhow::Result<Vec<f64>> {
    let spec = file.to_spec()?;
    if dim >= spec.dim() {
        anyhow::bail!(
            "dimension index {dim} out of range for a {}-dimensional problem",
            spec.dim()
        );
    }
    Ok(spec.exponents()?.iter().map(|l| l[dim]).collect())
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Approximate {
            file,
            grid,
            sup_grid,
            sharpened_x1,
            json,
            csv,
        } => {
            let problem = ProblemFile::load(&file)?;
            let spec = problem.to_spec()?;
            let grid = problem.to_grid(
                grid.lengths.clone(),
                grid.nodes.clone(),
                grid.g_rule.as_deref(),
                grid.eta,
            )?;
            let options = AnalysisOptions {
                sharpened_x1,
                measure_sup: true,
                sup_policy: problem.sup_policy(sup_grid),
            };
            let analysis = analyze(&spec, &grid, &options)?;
            let diophantine = check_diophantine(&spec)?;
            if let Some(path) = csv {
                output::write_approximant_csv(&path, &analysis)?;
            }
            if json {
                let doc = output::report_json(&grid, &analysis, &diophantine);
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                output::print_report_human(&spec, &grid, &analysis, &diophantine);
            }
            Ok(0)
        }
        Command::Bounds {
            file,
            grid,
            sharpened_x1,
            json,
        } => {
            let problem = ProblemFile::load(&file)?;
            let spec = problem.to_spec()?;
            let grid = problem.to_grid(
                grid.lengths.clone(),
                grid.nodes.clone(),
                grid.g_rule.as_deref(),
                grid.eta,
            )?;
            let options = AnalysisOptions {
                sharpened_x1,
                measure_sup: false,
                sup_policy: Default::default(),
            };
            let analysis = analyze(&spec, &grid, &options)?;
            let diophantine = check_diophantine(&spec)?;
            if json {
                let doc = output::report_json(&grid, &analysis, &diophantine);
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                output::print_report_human(&spec, &grid, &analysis, &diophantine);
            }
            Ok(0)
        }
        Command::Scan {
            file,
            dim,
            range,
            json,
            csv,
        } => {
            let problem = ProblemFile::load(&file)?;
            let column = exponent_column(&problem, dim)?;
            let (lo, hi) = parse_range(&range)?;
            let seq = best_sequence(&column, lo.max(1), hi)?;
            let records: std::collections::BTreeSet<i64> =
                seq.records.iter().map(|r| r.0).collect();
            let rows: Vec<(i64, f64, bool)> = (lo.max(1)..=hi)
                .map(|l| (l, column_error(&column, l), records.contains(&l)))
                .collect();
            let render_csv = |mut out: Box<dyn Write>| -> anyhow::Result<()> {
                writeln!(out, "L,e,is_record")?;
                for (l, e, rec) in &rows {
                    writeln!(out, "{l},{e},{rec}")?;
                }
                Ok(())
            };
            if let Some(path) = csv {
                render_csv(Box::new(std::fs::File::create(path)?))?;
            }
            if json {
                let doc: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(l, e, rec)| serde_json::json!({"L": l, "e": e, "is_record": rec}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                render_csv(Box::new(std::io::stdout()))?;
            }
            Ok(0)
        }
        Command::BestSeq {
            file,
            dim,
            range,
            json,
            csv,
        } => {
            let problem = ProblemFile::load(&file)?;
            let column = exponent_column(&problem, dim)?;
            let (lo, hi) = parse_range(&range)?;
            let seq = best_sequence(&column, lo.max(1), hi)?;
            let render_csv = |mut out: Box<dyn Write>| -> anyhow::Result<()> {
                writeln!(out, "k,t,e")?;
                for (k, (t, e)) in seq.records.iter().enumerate() {
                    writeln!(out, "{},{t},{e}", k + 1)?;
                }
                Ok(())
            };
            if let Some(path) = csv {
                render_csv(Box::new(std::fs::File::create(path)?))?;
            }
            if json {
                let doc: Vec<serde_json::Value> = seq
                    .records
                    .iter()
                    .enumerate()
                    .map(|(k, (t, e))| serde_json::json!({"k": k + 1, "t": t, "e": e}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                let growth = seq.geometric_growth();
                println!("{:<4} {:>8} {:>14} {:>10}", "k", "t", "e(t)", "t^(1/k)");
                for (k, (t, e)) in seq.records.iter().enumerate() {
                    println!(
                        "{:<4} {:>8} {:>14} {:>10.4}",
                        k + 1,
                        t,
                        output::sig5(*e),
                        growth[k]
                    );
                }
            }
            Ok(0)
        }
        Command::VerifyPaper { table, json } => verify::run(&table, json),
    }
}
