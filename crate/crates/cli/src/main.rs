use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use yiopt_cli::{
    comparison_table, export_traces, run_experiment, run_sweep, write_summary,
    write_sweep_report, Abscissa, ExperimentConfig, SweepParameter, SweepSpec,
};
use yiopt_core::benchmarks::{desk_suite, manifest_to_string};
use yiopt_core::{AlgorithmConfig, AlgorithmId};

/// Benchmark runner for single-point splitting optimizers and baselines.
#[derive(Parser)]
#[command(name = "yiopt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment description (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override the config's output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the config's worker count (0 = automatic).
    #[arg(long)]
    workers: Option<usize>,
    /// Cap repetitions at 5 and the budget multiplier at 500 for a quick
    /// shakeout.
    #[arg(long)]
    smoke: bool,
}

impl CommonArgs {
    fn load(&self) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::load(&self.config)?;
        if let Some(out) = &self.out {
            config.out_dir = out.clone();
        }
        if let Some(workers) = self.workers {
            config.workers = workers;
        }
        if self.smoke {
            config.apply_smoke();
        }
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every (problem, algorithm, repetition) cell, then write the
    /// summary table and convergence traces. Already-complete cells are
    /// skipped, so an interrupted run resumes where it stopped.
    Run(CommonArgs),
    /// Sweep one splitting-algorithm parameter over a list of values and
    /// score each variant against the base configuration.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Parameter to vary: sigma, i_min, i_max, alpha_stability, or
        /// n_offspring.
        #[arg(long)]
        param: SweepParameter,
        /// Comma-separated values to try.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Rebuild the summary table from records already on disk.
    Table(CommonArgs),
    /// Rebuild convergence traces from records already on disk.
    Traces {
        #[command(flatten)]
        common: CommonArgs,
        /// Report the abscissa as a fraction of the budget instead of raw
        /// evaluation counts.
        #[arg(long)]
        normalized: bool,
    },
    /// Print the problem suite an experiment would run, as a manifest.
    ListProblems {
        /// Experiment description; defaults to the desk suite at 10
        /// dimensions with suite seed 1.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print every algorithm id with its default configuration.
    ListAlgorithms,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(common) => {
            let config = common.load()?;
            let results = run_experiment(&config)?;
            let table = comparison_table(&results, config.significance)?;
            let (tsv, json) = write_summary(&config.out_dir, &table, &results.algorithms[0])?;
            let traces = export_traces(&results, &config.out_dir, Abscissa::Evaluations)?;
            let runs: usize = results.records.values().map(Vec::len).sum();
            println!("completed {runs} runs across {} problems", results.problems.len());
            println!("summary: {}", tsv.display());
            println!("summary: {}", json.display());
            println!("traces:  {} files", traces.len());
            for (algorithm, wtl) in &table.totals {
                println!(
                    "  {algorithm}: {} wins, {} ties, {} losses vs {}",
                    wtl.wins, wtl.ties, wtl.losses, results.algorithms[0]
                );
            }
            Ok(())
        }
        Command::Sweep {
            common,
            param,
            values,
        } => {
            let config = common.load()?;
            let spec = SweepSpec {
                parameter: param,
                values,
            };
            let report = run_sweep(&config, &spec)?;
            let path = write_sweep_report(&config.out_dir, &report)?;
            println!("sweep report: {}", path.display());
            for row in &report.rows {
                println!(
                    "  {} = {}: {} wins, {} ties, {} losses",
                    report.parameter,
                    row.value,
                    row.totals.wins,
                    row.totals.ties,
                    row.totals.losses
                );
            }
            Ok(())
        }
        Command::Table(common) => {
            let config = common.load()?;
            let results = yiopt_cli::load_results(&config)?;
            let table = comparison_table(&results, config.significance)?;
            let (tsv, json) = write_summary(&config.out_dir, &table, &results.algorithms[0])?;
            println!("summary: {}", tsv.display());
            println!("summary: {}", json.display());
            Ok(())
        }
        Command::Traces { common, normalized } => {
            let config = common.load()?;
            let results = yiopt_cli::load_results(&config)?;
            let abscissa = if normalized {
                Abscissa::FractionOfBudget
            } else {
                Abscissa::Evaluations
            };
            let paths = export_traces(&results, &config.out_dir, abscissa)?;
            println!("wrote {} trace files", paths.len());
            Ok(())
        }
        Command::ListProblems { config } => {
            let specs = match config {
                Some(path) => ExperimentConfig::load(&path)?.resolve_problems()?,
                None => desk_suite(10, 1),
            };
            print!("{}", manifest_to_string(&specs));
            Ok(())
        }
        Command::ListAlgorithms => {
            for id in AlgorithmId::ALL {
                let defaults = AlgorithmConfig::default_for(id);
                let json = serde_json::to_string(&defaults)
                    .context("serializing default configuration")?;
                println!("{id}\t{json}");
            }
            Ok(())
        }
    }
}
