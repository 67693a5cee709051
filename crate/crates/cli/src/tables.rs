//! Summary tables: per-algorithm error statistics on every problem, with
//! win/tie/loss verdicts against the experiment's reference algorithm.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use yiopt_core::stats::{build_table, classify, summarize, ComparisonCell, ComparisonTable};

use crate::runner::ResultSet;

/// Builds the comparison grid. Every algorithm, including the reference
/// itself, is classified against the first algorithm in the result set.
pub fn comparison_table(results: &ResultSet, significance: f64) -> Result<ComparisonTable> {
    let reference = results
        .algorithms
        .first()
        .map(String::as_str)
        .ok_or_else(|| anyhow::anyhow!("result set has no algorithms"))?;
    let mut cells = Vec::new();
    for problem in &results.problems {
        let reference_errors = results
            .errors_for(&problem.id, reference)
            .ok_or_else(|| anyhow::anyhow!("no records for ({}, {reference})", problem.id))?;
        for algorithm in &results.algorithms {
            let errors = results
                .errors_for(&problem.id, algorithm)
                .ok_or_else(|| anyhow::anyhow!("no records for ({}, {algorithm})", problem.id))?;
            if errors.len() < 2 {
                bail!(
                    "({}, {algorithm}) has {} repetition(s); the verdict tests need at least 2",
                    problem.id,
                    errors.len()
                );
            }
            cells.push(ComparisonCell {
                problem: problem.id.clone(),
                algorithm: algorithm.clone(),
                stats: summarize(&errors)
                    .with_context(|| format!("summarizing ({}, {algorithm})", problem.id))?,
                verdict: classify(&errors, &reference_errors, significance),
            });
        }
    }
    build_table(cells).context("assembling comparison table")
}

/// Renders the table as TSV and JSON under `<out>/tables/`, returning the
/// two paths. The reference algorithm is named in the TSV header so the
/// verdict column is self-describing.
pub fn write_summary(
    out: &Path,
    table: &ComparisonTable,
    reference: &str,
) -> Result<(PathBuf, PathBuf)> {
    let dir = out.join("tables");
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;

    let mut text = format!("# verdicts compare each algorithm against: {reference}\n");
    text.push_str("problem\talgorithm\tn\tbest\tworst\tmean\tstd\tmedian\tverdict\n");
    for cell in &table.cells {
        text.push_str(&format!(
            "{}\t{}\t{}\t{:.6e}\t{:.6e}\t{:.6e}\t{:.6e}\t{:.6e}\t{}\n",
            cell.problem,
            cell.algorithm,
            cell.stats.n,
            cell.stats.best,
            cell.stats.worst,
            cell.stats.mean,
            cell.stats.std,
            cell.stats.median,
            cell.verdict.symbol()
        ));
    }
    text.push_str("\nalgorithm\twins\tties\tlosses\n");
    for (algorithm, wtl) in &table.totals {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            algorithm, wtl.wins, wtl.ties, wtl.losses
        ));
    }
    let tsv_path = dir.join("summary.tsv");
    fs::write(&tsv_path, text).with_context(|| format!("writing {}", tsv_path.display()))?;

    let json_path = dir.join("summary.json");
    let json = serde_json::to_string_pretty(table).context("serializing comparison table")?;
    fs::write(&json_path, json).with_context(|| format!("writing {}", json_path.display()))?;
    Ok((tsv_path, json_path))
}
