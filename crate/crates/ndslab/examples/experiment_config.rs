//! Building and running a declarative experiment config programmatically,
//! then flattening the JSONL report into plot-ready CSV. The same config
//! as a JSON file runs through the CLI: `ndslab run config.json`.
//!
//! ```bash
//! cargo run -p ndslab --example experiment_config
//! ```

use ndslab::experiment::{
    emit_plot_data, run_config, CheckSpec, ExperimentConfig, FamilySpec, OutputFormat, OutputSpec,
    PlotKind, PointSpec, SystemSpec, TruncationSpec,
};
use ndslab::rational::{rat, Rational};
use ndslab::space::SpaceTag;

fn main() -> ndslab::Result<()> {
    let dir = std::env::temp_dir().join("ndslab-example");
    std::fs::create_dir_all(&dir)?;
    let report_path = dir.join("halving.jsonl");

    let config = ExperimentConfig {
        system: SystemSpec { space: SpaceTag::Circle, family: FamilySpec::HalvingRotations },
        checks: vec![
            CheckSpec::CheckLStar {},
            CheckSpec::CheckL {},
            CheckSpec::CheckCcStar { eps: Some(rat(1, 8)) },
            CheckSpec::CheckDoStar { x0: PointSpec::Fraction(Rational::zero()), eps: None },
        ],
        truncation: TruncationSpec { n_max: 16, k_max: 1024, ..TruncationSpec::default() },
        output: OutputSpec { format: OutputFormat::Jsonl, path: report_path.clone() },
    };

    // The config is an ordinary JSON document; print it as the CLI would
    // consume it.
    println!("config:\n{}\n", serde_json::to_string_pretty(&config)?);

    let outcome = run_config(&config)?;
    println!("summary:");
    for line in &outcome.summary {
        println!("{line}");
    }
    println!("report written to {}\n", outcome.output_path.display());

    let csv = emit_plot_data(&report_path, PlotKind::Trace)?;
    println!("trace CSV (first lines):");
    for line in csv.lines().take(6) {
        println!("{line}");
    }

    let coverage = emit_plot_data(&report_path, PlotKind::Coverage)?;
    println!("\ncoverage CSV (first lines):");
    for line in coverage.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
