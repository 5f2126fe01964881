//! Command-line front end for the ndslab library: run experiment configs,
//! execute gallery entries, and flatten reports into plot-ready CSV.
//!
//! Exit codes for `run`: 0 success, 1 a structural-law/assertion check
//! failed, 2 config or usage error, 3 execution error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ndslab::experiment::{self, PlotKind};
use ndslab::gallery;
use ndslab::Error;

/// Worker-count override, e.g. `NDSLAB_THREADS=4 ndslab gallery run-all`.
const THREADS_ENV: &str = "NDSLAB_THREADS";

#[derive(Parser)]
#[command(name = "ndslab", version, about = "Exact experiments on nonautonomous dynamical systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON experiment config and write its report file.
    Run {
        /// Path to the config (see README for the schema).
        config: PathBuf,
    },
    /// Named example systems with machine-checked assertions.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// Flatten a JSONL report into CSV plot data.
    EmitPlotData {
        /// Path to a JSONL report produced by `run`.
        report: PathBuf,
        /// Which series to extract: trace | coverage | pair-matrix.
        #[arg(long)]
        kind: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    /// List entry ids and titles.
    List,
    /// Run one entry and print its assertion results.
    Run {
        id: String,
        /// JSON object overriding the entry's default parameters.
        #[arg(long)]
        params: Option<String>,
    },
    /// Run every entry; exit nonzero if any assertion fails.
    RunAll,
}

fn print_entry(report: &gallery::EntryReport) {
    println!("{}  —  {}", report.id, report.title);
    for a in &report.assertions {
        let mark = if a.passed { "pass" } else { "FAIL" };
        println!("  [{mark}] {}", a.description);
        if !a.passed {
            println!("         expected: {}", a.expected);
            println!("         actual:   {}", a.actual);
        }
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::BadRational(_) | Error::Domain(_) | Error::Precondition(_) => 2,
        _ => 3,
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    experiment::init_worker_pool(THREADS_ENV);
    match cli.command {
        Command::Run { config } => {
            let outcome = experiment::run_config_file(&config)?;
            println!("idx  status  check");
            for line in &outcome.summary {
                println!("{line}");
            }
            println!(
                "{} checks, {} failures -> {}",
                outcome.records.len(),
                outcome.failures,
                outcome.output_path.display()
            );
            Ok(if outcome.failures > 0 { 1 } else { 0 })
        }
        Command::Gallery { action } => match action {
            GalleryAction::List => {
                for (id, title) in gallery::list() {
                    println!("{id:38} {title}");
                }
                Ok(0)
            }
            GalleryAction::Run { id, params } => {
                let report = gallery::run(&id, params.as_deref())?;
                print_entry(&report);
                Ok(if report.all_passed() { 0 } else { 1 })
            }
            GalleryAction::RunAll => {
                let reports = gallery::run_all()?;
                let mut failed = 0usize;
                for report in &reports {
                    print_entry(report);
                    if !report.all_passed() {
                        failed += 1;
                    }
                    println!();
                }
                println!(
                    "{} entries, {} with failing assertions",
                    reports.len(),
                    failed
                );
                Ok(if failed > 0 { 1 } else { 0 })
            }
        },
        Command::EmitPlotData { report, kind, out } => {
            let kind: PlotKind = kind.parse()?;
            let csv = match experiment::emit_plot_data(&report, kind) {
                Ok(csv) => csv,
                Err(Error::Config(msg)) => {
                    eprintln!("error: {msg}");
                    return Ok(1); // kind not present in the report
                }
                Err(e) => return Err(e),
            };
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
