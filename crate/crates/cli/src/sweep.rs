//! Parameter sweeps for the splitting algorithm: rerun the experiment with
//! one parameter varied over a list of values and report win/tie/loss
//! counts of each variant against the base configuration, one row per
//! value.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use yiopt_core::stats::{classify, Verdict, WinTieLoss};
use yiopt_core::YiParams;

use crate::config::{spec_from_yi, yi_params_of, ExperimentConfig};
use crate::runner::{run_experiment_on, ResultSet};

/// Which splitting-algorithm parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Sigma,
    IMin,
    IMax,
    AlphaStability,
    NOffspring,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 5] = [
        SweepParameter::Sigma,
        SweepParameter::IMin,
        SweepParameter::IMax,
        SweepParameter::AlphaStability,
        SweepParameter::NOffspring,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Sigma => "sigma",
            SweepParameter::IMin => "i_min",
            SweepParameter::IMax => "i_max",
            SweepParameter::AlphaStability => "alpha_stability",
            SweepParameter::NOffspring => "n_offspring",
        }
    }

    /// The parameter's current value in a configuration.
    pub fn read(self, params: &YiParams) -> f64 {
        match self {
            SweepParameter::Sigma => params.sigma,
            SweepParameter::IMin => params.i_min as f64,
            SweepParameter::IMax => params.i_max as f64,
            SweepParameter::AlphaStability => params.alpha_stability,
            SweepParameter::NOffspring => params.n_offspring as f64,
        }
    }

    /// Sets the parameter and revalidates the whole configuration, so a
    /// swept value can never smuggle in an inconsistent schedule.
    pub fn apply(self, value: f64, params: &mut YiParams) -> Result<()> {
        match self {
            SweepParameter::Sigma => params.sigma = value,
            SweepParameter::AlphaStability => params.alpha_stability = value,
            SweepParameter::IMin => params.i_min = as_count(self, value)?,
            SweepParameter::IMax => params.i_max = as_count(self, value)?,
            SweepParameter::NOffspring => params.n_offspring = as_count(self, value)?,
        }
        params
            .validate()
            .with_context(|| format!("{} = {value}", self.name()))?;
        Ok(())
    }
}

fn as_count(parameter: SweepParameter, value: f64) -> Result<usize> {
    if value.fract() != 0.0 || !(0.0..=u32::MAX as f64).contains(&value) {
        bail!(
            "{} must be a nonnegative integer, got {value}",
            parameter.name()
        );
    }
    Ok(value as usize)
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParameter::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                anyhow::anyhow!(
                    "unknown sweep parameter {s:?}; expected one of sigma, i_min, i_max, \
                     alpha_stability, n_offspring"
                )
            })
    }
}

/// A sweep request: the parameter and the values to try.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            bail!("a sweep needs at least one value");
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            bail!("sweep values must be finite, got {v}");
        }
        Ok(())
    }
}

/// One sweep row: a parameter value, its per-problem verdicts against the
/// base configuration, and the verdict totals.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub verdicts: Vec<(String, Verdict)>,
    pub totals: WinTieLoss,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub parameter: SweepParameter,
    pub base_value: f64,
    pub problems: Vec<String>,
    pub rows: Vec<SweepRow>,
}

/// Runs the base configuration once and each variant once, reusing any
/// records already on disk. The base runs under the experiment's output
/// directory; each variant runs under `sweep/<parameter>_<value>/`.
/// Variants share the base's run seeds, so sweeping a parameter over its
/// base value reproduces the base runs exactly and scores all ties.
pub fn run_sweep(config: &ExperimentConfig, spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    config.validate()?;
    if config.repetitions < 2 {
        bail!("a sweep needs at least 2 repetitions for the verdict tests");
    }
    let base_params = config
        .built_algorithms()?
        .iter()
        .find_map(yi_params_of)
        .cloned()
        .unwrap_or_default();
    let problems = config.resolve_problems()?;

    let mut base_config = config.clone();
    base_config.algorithms = vec![spec_from_yi(&base_params)];
    let base_results = run_experiment_on(&base_config, &problems)?;

    let mut rows = Vec::new();
    for &value in &spec.values {
        let mut params = base_params.clone();
        spec.parameter.apply(value, &mut params)?;
        let mut variant_config = base_config.clone();
        variant_config.algorithms = vec![spec_from_yi(&params)];
        variant_config.out_dir = config
            .out_dir
            .join("sweep")
            .join(format!("{}_{value}", spec.parameter));
        let variant_results = run_experiment_on(&variant_config, &problems)?;
        rows.push(score_row(
            value,
            &variant_results,
            &base_results,
            config.significance,
        )?);
    }
    Ok(SweepReport {
        parameter: spec.parameter,
        base_value: spec.parameter.read(&base_params),
        problems: base_results
            .problems
            .iter()
            .map(|p| p.id.clone())
            .collect(),
        rows,
    })
}

fn score_row(
    value: f64,
    variant: &ResultSet,
    base: &ResultSet,
    significance: f64,
) -> Result<SweepRow> {
    let mut verdicts = Vec::new();
    let mut totals = WinTieLoss::default();
    for problem in &base.problems {
        let base_errors = base
            .errors_for(&problem.id, "yi")
            .ok_or_else(|| anyhow::anyhow!("base results lack ({}, yi)", problem.id))?;
        let variant_errors = variant
            .errors_for(&problem.id, "yi")
            .ok_or_else(|| anyhow::anyhow!("variant results lack ({}, yi)", problem.id))?;
        let verdict = classify(&variant_errors, &base_errors, significance);
        match verdict {
            Verdict::Win => totals.wins += 1,
            Verdict::Tie => totals.ties += 1,
            Verdict::Loss => totals.losses += 1,
        }
        verdicts.push((problem.id.clone(), verdict));
    }
    Ok(SweepRow {
        value,
        verdicts,
        totals,
    })
}

/// Renders `tables/sweep_<parameter>.tsv`: one row per swept value with
/// per-problem verdict symbols and win/tie/loss totals.
pub fn write_sweep_report(out: &Path, report: &SweepReport) -> Result<PathBuf> {
    let dir = out.join("tables");
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut text = format!(
        "# sweep of {} against its base value {}\n",
        report.parameter, report.base_value
    );
    text.push_str("value");
    for problem in &report.problems {
        text.push('\t');
        text.push_str(problem);
    }
    text.push_str("\twins\tties\tlosses\n");
    for row in &report.rows {
        text.push_str(&row.value.to_string());
        for (_, verdict) in &row.verdicts {
            text.push('\t');
            text.push(verdict.symbol());
        }
        text.push_str(&format!(
            "\t{}\t{}\t{}\n",
            row.totals.wins, row.totals.ties, row.totals.losses
        ));
    }
    let path = dir.join(format!("sweep_{}.tsv", report.parameter));
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AlgorithmSpec;
    use yiopt_core::AlgorithmId;

    #[test]
    fn parameter_names_round_trip() {
        for parameter in SweepParameter::ALL {
            assert_eq!(parameter.name().parse::<SweepParameter>().unwrap(), parameter);
        }
        assert!("gamma".parse::<SweepParameter>().is_err());
    }

    #[test]
    fn apply_writes_the_named_field_and_validates() {
        let mut params = YiParams::default();
        SweepParameter::Sigma.apply(4.0, &mut params).unwrap();
        assert_eq!(params.sigma, 4.0);
        SweepParameter::IMin.apply(3.0, &mut params).unwrap();
        assert_eq!(params.i_min, 3);
        assert_eq!(SweepParameter::IMin.read(&params), 3.0);

        // Fractional counts and schedule violations are both rejected.
        assert!(SweepParameter::IMin.apply(6.5, &mut params).is_err());
        assert!(SweepParameter::IMax.apply(1.0, &mut params).is_err());
        assert!(SweepParameter::Sigma.apply(f64::NAN, &mut params).is_err());
    }

    #[test]
    fn sweeping_the_base_value_scores_all_ties() {
        let dir = tempfile::tempdir().unwrap();
        let config = ExperimentConfig {
            root_seed: 11,
            suite: "smoke".to_string(),
            suite_seed: 1,
            dims: vec![2],
            budget_multiplier: 100,
            repetitions: 3,
            significance: 0.05,
            out_dir: dir.path().to_path_buf(),
            workers: 1,
            algorithms: vec![AlgorithmSpec::plain(AlgorithmId::Yi)],
        };
        let spec = SweepSpec {
            parameter: SweepParameter::Sigma,
            values: vec![3.0],
        };
        let report = run_sweep(&config, &spec).unwrap();
        assert_eq!(report.base_value, 3.0);
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.totals.ties, 4);
        assert_eq!(row.totals.wins + row.totals.losses, 0);
        assert!(row.verdicts.iter().all(|(_, v)| *v == Verdict::Tie));

        let path = write_sweep_report(dir.path(), &report).unwrap();
        let text = fs::read_to_string(path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("value\t"));
        assert!(lines[1].ends_with("wins\tties\tlosses"));
        assert_eq!(lines[2], "3\t=\t=\t=\t=\t0\t4\t0");
    }
}
