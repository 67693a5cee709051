//! Convergence-trace export: per (problem, algorithm), the median and
//! interquartile band of best-so-far fitness across repetitions, sampled
//! on a 100-point grid over the evaluation budget.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use crate::runner::ResultSet;

/// How the grid abscissa is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Abscissa {
    /// Raw evaluation counts, 1..=budget.
    Evaluations,
    /// Fraction of the budget in (0, 1]; the last row lands on 1.
    FractionOfBudget,
}

const GRID_POINTS: u64 = 100;

/// The evaluation counts sampled for a given budget: `round(k * budget /
/// 100)` for k = 1..=100, clamped to at least one evaluation. Small
/// budgets produce duplicate grid values; duplicates are kept so every
/// export has the same number of rows.
pub fn trace_grid(budget: u64) -> Vec<u64> {
    (1..=GRID_POINTS)
        .map(|k| {
            let exact = (k as f64) * (budget as f64) / (GRID_POINTS as f64);
            (exact.round() as u64).max(1)
        })
        .collect()
}

/// Linear-interpolation quantile of a sorted sample (the common "R-7"
/// definition used by numpy's default percentile).
fn quantile(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&q));
    let position = q * (sorted.len() - 1) as f64;
    let low = position.floor() as usize;
    let high = position.ceil() as usize;
    let weight = position - low as f64;
    sorted[low] + (sorted[high] - sorted[low]) * weight
}

/// Writes one TSV per (problem, algorithm) under `<out>/traces/`, named
/// `<problem>__<algorithm>.tsv`, and returns the paths written in result
/// order.
pub fn export_traces(results: &ResultSet, out: &Path, abscissa: Abscissa) -> Result<Vec<PathBuf>> {
    if results.problems.is_empty() || results.algorithms.is_empty() {
        bail!("the result set is empty; nothing to export");
    }
    let dir = out.join("traces");
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut paths = Vec::new();
    for problem in &results.problems {
        let grid = trace_grid(problem.budget);
        for algorithm in &results.algorithms {
            let records = results
                .records_for(&problem.id, algorithm)
                .ok_or_else(|| anyhow::anyhow!("no records for ({}, {algorithm})", problem.id))?;
            if records.is_empty() {
                bail!("({}, {algorithm}) has no repetitions", problem.id);
            }
            let mut text = match abscissa {
                Abscissa::Evaluations => String::from("evals\tmedian\tp25\tp75\n"),
                Abscissa::FractionOfBudget => String::from("fraction\tmedian\tp25\tp75\n"),
            };
            for &evals in &grid {
                let mut values: Vec<f64> = records
                    .iter()
                    .map(|r| {
                        r.best_at(evals)
                            .expect("traces start at the first evaluation")
                    })
                    .collect();
                values.sort_by(|x, y| x.partial_cmp(y).expect("fitness values are not NaN"));
                let median = quantile(&values, 0.50);
                let p25 = quantile(&values, 0.25);
                let p75 = quantile(&values, 0.75);
                match abscissa {
                    Abscissa::Evaluations => {
                        text.push_str(&format!(
                            "{evals}\t{median:.6e}\t{p25:.6e}\t{p75:.6e}\n"
                        ));
                    }
                    Abscissa::FractionOfBudget => {
                        let fraction = evals as f64 / problem.budget as f64;
                        text.push_str(&format!(
                            "{fraction:.6}\t{median:.6e}\t{p25:.6e}\t{p75:.6e}\n"
                        ));
                    }
                }
            }
            let path = dir.join(format!("{}__{algorithm}.tsv", problem.id));
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            paths.push(path);
        }
    }
    Ok(paths)
}
