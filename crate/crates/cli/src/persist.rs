//! On-disk layout for experiment results.
//!
//! One JSON file per run under `runs/<problem>/<algorithm>/<rep>.record`,
//! plus a tab-separated index of everything present. A record file is the
//! unit of crash recovery: re-running an experiment skips any (problem,
//! algorithm, rep) whose record already loads cleanly.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use yiopt_core::RunRecord;

/// Where the record for one repetition lives, relative to the output root.
pub fn record_path(out: &Path, problem: &str, algorithm: &str, rep: usize) -> PathBuf {
    out.join("runs")
        .join(problem)
        .join(algorithm)
        .join(format!("{rep}.record"))
}

pub fn save_record(path: &Path, record: &RunRecord) -> Result<()> {
    let parent = path
        .parent()
        .with_context(|| format!("record path {} has no parent", path.display()))?;
    fs::create_dir_all(parent)
        .with_context(|| format!("creating record directory {}", parent.display()))?;
    let json = serde_json::to_string(record).context("serializing run record")?;
    fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn load_record(path: &Path) -> Result<RunRecord> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A record that is missing or unreadable counts as absent; a half-written
/// file from a crashed run is simply redone.
pub fn try_load_record(path: &Path) -> Option<RunRecord> {
    load_record(path).ok()
}

/// One line of the run index.
pub struct IndexEntry {
    pub problem: String,
    pub algorithm: String,
    pub rep: usize,
    pub seed: u64,
    pub total_evals: u64,
    pub final_best_fitness: f64,
}

/// Writes `runs/index.tsv` listing every stored record. Entries are
/// written in the caller's order, so identical experiments produce
/// byte-identical indexes.
pub fn write_index(out: &Path, entries: &[IndexEntry]) -> Result<PathBuf> {
    let dir = out.join("runs");
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut text = String::from("problem\talgorithm\trep\tseed\ttotal_evals\tfinal_best_fitness\n");
    for e in entries {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{:e}\n",
            e.problem, e.algorithm, e.rep, e.seed, e.total_evals, e.final_best_fitness
        ));
    }
    let path = dir.join("index.tsv");
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
