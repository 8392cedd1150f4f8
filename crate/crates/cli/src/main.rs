//! `onticlab` — experiment runner for the hidden-variable model library.
//!
//! Settings merge as flags > config file > environment (`ONTICLAB_SEED`) >
//! defaults. Reports are written as CSV or JSON; the exit status is 0 when
//! every check passes, 1 when any check fails (the report path is printed),
//! and 2 for configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

mod config;
mod experiments;

use config::{ConfigError, ExperimentConfig, PartialConfig, ReportFormat, SEED_ENV};
use onticlab_core::report::{self, ReportEntry};

#[derive(Debug, Parser)]
#[command(
    name = "onticlab",
    about = "Run hidden-variable model experiments and verification batteries",
    after_help = "EXPERIMENTS:\n  \
        born-test           Monte Carlo Born-rule battery for one model (needs --model)\n  \
        contextuality-demo  ordering-dependence witnesses in Bell's model (N >= 3)\n  \
        property-suite      full verification battery over all models\n  \
        wigner-demo         marginals, quadrature KS tests, symplectic checks\n  \
        dimension-audit     continuous-variable counts against the 2N-2 bound\n\n\
        MODELS: qubit-df, qubit-b0, bell-df, bell-ndf, wigner-gaussian\n\n\
        The environment variable ONTICLAB_SEED supplies a default master seed."
)]
struct Cli {
    /// Experiment to run (alternative to --experiment)
    #[arg(value_name = "EXPERIMENT")]
    experiment_arg: Option<String>,

    /// Experiment to run
    #[arg(long, value_name = "EXPERIMENT")]
    experiment: Option<String>,

    /// Model under test
    #[arg(long)]
    model: Option<String>,

    /// Hilbert space dimension for the Bell models
    #[arg(long = "N", value_name = "N")]
    dim: Option<usize>,

    /// Monte Carlo samples per check
    #[arg(long)]
    samples: Option<u64>,

    /// Master seed; per-check streams derive from it
    #[arg(long)]
    seed: Option<u64>,

    /// Flat key=value configuration file (flags override it)
    #[arg(long)]
    config: Option<PathBuf>,

    /// Report output path
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format: csv or json
    #[arg(long)]
    format: Option<String>,
}

fn resolve_config(cli: Cli) -> Result<ExperimentConfig, ConfigError> {
    let experiment = cli.experiment.or(cli.experiment_arg);
    let flags = PartialConfig {
        experiment,
        model: cli.model,
        dim: cli.dim,
        samples: cli.samples,
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
    };
    let merged = match &cli.config {
        Some(path) => flags.over(PartialConfig::from_file(path)?),
        None => flags,
    };
    ExperimentConfig::resolve(merged, std::env::var(SEED_ENV).ok())
}

fn summarize(entries: &[ReportEntry]) -> (usize, usize) {
    let total = entries.len();
    let passed = entries.iter().filter(|e| e.pass()).count();
    (passed, total)
}

/// Exit status: 0 iff every entry passes, 1 otherwise.
fn battery_exit(passed: usize, total: usize) -> ExitCode {
    if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match resolve_config(cli) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let entries = experiments::run(&config);
    let rendered = match config.format {
        ReportFormat::Csv => report::to_csv(&entries),
        ReportFormat::Json => report::to_json(&entries),
    };
    if let Err(e) = std::fs::write(&config.out, rendered) {
        eprintln!("error: cannot write report {}: {e}", config.out.display());
        return ExitCode::from(2);
    }

    let (passed, total) = summarize(&entries);
    println!(
        "{}: {passed}/{total} checks passed (seed {}, report {})",
        config.experiment,
        config.seed,
        config.out.display()
    );
    for entry in &entries {
        if !entry.pass() {
            if let ReportEntry::Row(row) = entry {
                println!("  FAIL {} [{}]", row.check, row.model);
            }
        }
    }

    if passed != total {
        println!("failing report: {}", config.out.display());
    }
    battery_exit(passed, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use onticlab_core::report::ReportRow;

    fn row(pass: bool) -> ReportEntry {
        ReportEntry::Row(ReportRow {
            check: "t".into(),
            model: "m".into(),
            dim: None,
            n: None,
            estimate: None,
            exact: None,
            z_score: None,
            overlap_count: None,
            seed: None,
            pass,
        })
    }

    #[test]
    fn exit_status_reflects_battery_outcome() {
        let all_pass = vec![row(true), row(true)];
        let (p, t) = summarize(&all_pass);
        assert_eq!((p, t), (2, 2));
        assert_eq!(battery_exit(p, t), ExitCode::SUCCESS);

        let one_fail = vec![row(true), row(false)];
        let (p, t) = summarize(&one_fail);
        assert_eq!((p, t), (1, 2));
        assert_eq!(battery_exit(p, t), ExitCode::from(1));
    }
}
