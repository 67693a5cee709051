//! Executes an experiment: every (problem, algorithm, repetition) cell on a
//! worker pool, with per-run records persisted as they finish.
//!
//! Scheduling never touches the numbers. Each run's seed is derived from
//! the root seed and the cell's identity alone, and aggregation reloads the
//! records from disk in a fixed order, so 1 worker and 8 workers produce
//! byte-identical outputs.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use yiopt_core::benchmarks::{ProblemSpec, SuiteProblem};
use yiopt_core::{derive_seed, AlgorithmConfig, RunRecord};

use crate::config::ExperimentConfig;
use crate::persist::{record_path, save_record, try_load_record, write_index, IndexEntry};

/// Static facts about one problem in the result set.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInfo {
    pub id: String,
    pub dim: usize,
    pub bias: f64,
    pub budget: u64,
}

/// All records of one experiment, keyed by (problem id, algorithm name),
/// each holding `repetitions` records in repetition order.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultSet {
    pub problems: Vec<ProblemInfo>,
    /// Algorithm names in configuration order; the first is the reference.
    pub algorithms: Vec<String>,
    pub records: BTreeMap<(String, String), Vec<RunRecord>>,
}

impl ResultSet {
    pub fn records_for(&self, problem: &str, algorithm: &str) -> Option<&[RunRecord]> {
        self.records
            .get(&(problem.to_string(), algorithm.to_string()))
            .map(Vec::as_slice)
    }

    /// Final errors (best fitness minus the problem's bias) per repetition.
    pub fn errors_for(&self, problem: &str, algorithm: &str) -> Option<Vec<f64>> {
        let bias = self.problems.iter().find(|p| p.id == problem)?.bias;
        let records = self.records_for(problem, algorithm)?;
        Some(
            records
                .iter()
                .map(|r| r.final_best_fitness - bias)
                .collect(),
        )
    }
}

struct Job {
    problem_index: usize,
    algorithm_index: usize,
    rep: usize,
    seed: u64,
    path: PathBuf,
}

/// The seed for one run, derived so that it depends only on the cell's
/// identity, never on scheduling or resume history.
pub fn run_seed(root_seed: u64, problem_id: &str, algorithm: &str, rep: usize) -> u64 {
    derive_seed(root_seed, &[problem_id, algorithm, &rep.to_string()])
}

/// Runs the experiment described by `config` on its resolved suite.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultSet> {
    let problems = config.resolve_problems()?;
    run_experiment_on(config, &problems)
}

/// Runs the experiment on an explicit list of problems. Cells whose record
/// file already loads are skipped, which makes interrupted experiments
/// resumable by re-invoking the same command.
pub fn run_experiment_on(config: &ExperimentConfig, specs: &[ProblemSpec]) -> Result<ResultSet> {
    config.validate()?;
    if specs.is_empty() {
        bail!("the experiment has no problems to run");
    }
    let algorithms = config.built_algorithms()?;
    let instances = instantiate_all(specs)?;

    let mut jobs = Vec::new();
    for (pi, problem) in instances.iter().enumerate() {
        for (ai, algorithm) in algorithms.iter().enumerate() {
            let name = algorithm.id().name();
            for rep in 0..config.repetitions {
                let path = record_path(&config.out_dir, problem.id(), name, rep);
                if try_load_record(&path).is_some() {
                    continue;
                }
                jobs.push(Job {
                    problem_index: pi,
                    algorithm_index: ai,
                    rep,
                    seed: run_seed(config.root_seed, problem.id(), name, rep),
                    path,
                });
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .context("building worker pool")?;
    let failures: Vec<String> = pool.install(|| {
        jobs.par_iter()
            .filter_map(|job| {
                let problem = &instances[job.problem_index];
                let algorithm = &algorithms[job.algorithm_index];
                let budget = config.budget_for(problem.space().dim());
                let outcome = algorithm
                    .run(problem, problem.space(), budget, job.seed, problem.id())
                    .map_err(anyhow::Error::from)
                    .and_then(|record| save_record(&job.path, &record));
                outcome.err().map(|e| {
                    format!(
                        "{}/{}/{}: {e:#}",
                        problem.id(),
                        algorithm.id().name(),
                        job.rep
                    )
                })
            })
            .collect()
    });
    if !failures.is_empty() {
        bail!("{} runs failed:\n{}", failures.len(), failures.join("\n"));
    }

    let results = load_results_on(config, specs)?;
    write_result_index(config, &results)?;
    Ok(results)
}

/// Loads a previously run experiment's records from disk without running
/// anything. Missing cells are an error naming each absent record.
pub fn load_results(config: &ExperimentConfig) -> Result<ResultSet> {
    let problems = config.resolve_problems()?;
    load_results_on(config, &problems)
}

pub fn load_results_on(config: &ExperimentConfig, specs: &[ProblemSpec]) -> Result<ResultSet> {
    let algorithms = config.built_algorithms()?;
    let instances = instantiate_all(specs)?;
    let mut records = BTreeMap::new();
    let mut missing = Vec::new();
    for problem in &instances {
        for algorithm in &algorithms {
            let name = algorithm.id().name();
            let mut cell = Vec::with_capacity(config.repetitions);
            for rep in 0..config.repetitions {
                let path = record_path(&config.out_dir, problem.id(), name, rep);
                match try_load_record(&path) {
                    Some(record) => cell.push(record),
                    None => missing.push(path.display().to_string()),
                }
            }
            records.insert((problem.id().to_string(), name.to_string()), cell);
        }
    }
    if !missing.is_empty() {
        bail!(
            "{} records are missing or unreadable (run the experiment first):\n{}",
            missing.len(),
            missing.join("\n")
        );
    }
    let problems = instances
        .iter()
        .map(|p| ProblemInfo {
            id: p.id().to_string(),
            dim: p.space().dim(),
            bias: p.bias(),
            budget: config.budget_for(p.space().dim()),
        })
        .collect();
    Ok(ResultSet {
        problems,
        algorithms: algorithms
            .iter()
            .map(|a| a.id().name().to_string())
            .collect(),
        records,
    })
}

fn instantiate_all(specs: &[ProblemSpec]) -> Result<Vec<SuiteProblem>> {
    specs
        .iter()
        .map(|s| {
            s.instantiate()
                .with_context(|| format!("instantiating problem {}", s.id))
        })
        .collect()
}

fn write_result_index(config: &ExperimentConfig, results: &ResultSet) -> Result<()> {
    let mut entries = Vec::new();
    for problem in &results.problems {
        for algorithm in &results.algorithms {
            let cell = results
                .records_for(&problem.id, algorithm)
                .expect("every loaded cell is present");
            for (rep, record) in cell.iter().enumerate() {
                entries.push(IndexEntry {
                    problem: problem.id.clone(),
                    algorithm: algorithm.clone(),
                    rep,
                    seed: record.seed,
                    total_evals: record.total_evals,
                    final_best_fitness: record.final_best_fitness,
                });
            }
        }
    }
    write_index(&config.out_dir, &entries)?;
    Ok(())
}

/// Convenience accessor used by reports: the named algorithm's run
/// configuration, if the experiment includes it.
pub fn algorithm_named(configs: &[AlgorithmConfig], name: &str) -> Option<AlgorithmConfig> {
    configs.iter().find(|a| a.id().name() == name).cloned()
}
