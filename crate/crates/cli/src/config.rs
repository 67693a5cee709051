//! Experiment configuration: a TOML file describing which algorithms run on
//! which problem suite, with how many repetitions and what budget.
//!
//! Unknown keys are rejected so a typo cannot silently fall back to a
//! default. Algorithm entries share one flat key set; setting a key that
//! does not apply to the chosen algorithm is an error for the same reason.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use yiopt_core::benchmarks::{desk_suite, manifest_from_str, smoke_suite, ProblemSpec};
use yiopt_core::{AlgorithmConfig, AlgorithmId, ScopePolicy, YiParams};

/// Top-level experiment description, usually loaded from a TOML file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Root seed; every run's seed is derived from it, the problem id, the
    /// algorithm name, and the repetition index.
    pub root_seed: u64,
    /// `"desk"`, `"smoke"`, or a path to a suite manifest file.
    #[serde(default = "default_suite")]
    pub suite: String,
    /// Seed for the suite's shift/rotation instantiation.
    #[serde(default = "default_suite_seed")]
    pub suite_seed: u64,
    /// Dimensions to instantiate the named suites at. Ignored when `suite`
    /// is a manifest path (the manifest pins its own dimensions).
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    /// Evaluation budget per run is `budget_multiplier * dim`.
    #[serde(default = "default_budget_multiplier")]
    pub budget_multiplier: u64,
    /// Independent runs per (problem, algorithm) pair.
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    /// Significance level for the win/tie/loss tests.
    #[serde(default = "default_significance")]
    pub significance: f64,
    /// Output directory for run records, tables, and traces.
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    /// Worker threads; 0 lets the thread pool pick.
    #[serde(default)]
    pub workers: usize,
    /// Algorithms to run. The first entry is the reference that the
    /// win/tie/loss columns compare against.
    pub algorithms: Vec<AlgorithmSpec>,
}

fn default_suite() -> String {
    "desk".to_string()
}

fn default_suite_seed() -> u64 {
    1
}

fn default_dims() -> Vec<usize> {
    vec![10]
}

fn default_budget_multiplier() -> u64 {
    10_000
}

fn default_repetitions() -> usize {
    51
}

fn default_significance() -> f64 {
    0.05
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("results")
}

impl ExperimentConfig {
    /// Reads and validates a TOML config file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: ExperimentConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            bail!("repetitions must be at least 1");
        }
        if self.budget_multiplier == 0 {
            bail!("budget_multiplier must be at least 1");
        }
        if self.dims.is_empty() {
            bail!("dims must name at least one dimension");
        }
        if let Some(d) = self.dims.iter().find(|&&d| d == 0) {
            bail!("dimension {d} is not usable; dims must be positive");
        }
        if !(self.significance > 0.0 && self.significance < 1.0) {
            bail!("significance must lie strictly between 0 and 1");
        }
        if self.algorithms.is_empty() {
            bail!("algorithms must name at least one entry");
        }
        let mut names: Vec<&str> = Vec::new();
        for spec in &self.algorithms {
            let config = spec.build()?;
            let name = config.id().name();
            if names.contains(&name) {
                bail!("algorithm {name} appears twice; each may run at most once");
            }
            names.push(name);
        }
        Ok(())
    }

    /// Caps repetitions and budget for a quick shakeout run.
    pub fn apply_smoke(&mut self) {
        self.repetitions = self.repetitions.min(5);
        self.budget_multiplier = self.budget_multiplier.min(500);
    }

    /// Evaluation budget for one run at the given dimension.
    pub fn budget_for(&self, dim: usize) -> u64 {
        self.budget_multiplier * dim as u64
    }

    /// Expands `suite` + `dims` into concrete problem specs.
    pub fn resolve_problems(&self) -> Result<Vec<ProblemSpec>> {
        let specs: Vec<ProblemSpec> = match self.suite.as_str() {
            "desk" => self
                .dims
                .iter()
                .flat_map(|&d| desk_suite(d, self.suite_seed))
                .collect(),
            "smoke" => self
                .dims
                .iter()
                .flat_map(|&d| smoke_suite(d, self.suite_seed))
                .collect(),
            path => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading suite manifest {path}"))?;
                manifest_from_str(&text).with_context(|| format!("parsing suite manifest {path}"))?
            }
        };
        let mut ids: Vec<&str> = specs.iter().map(|s| s.id.as_str()).collect();
        ids.sort();
        if let Some(dup) = ids.windows(2).find(|w| w[0] == w[1]) {
            bail!("problem id {} appears twice in the suite", dup[0]);
        }
        Ok(specs)
    }

    /// Builds the validated algorithm configurations in declaration order.
    pub fn built_algorithms(&self) -> Result<Vec<AlgorithmConfig>> {
        self.algorithms.iter().map(AlgorithmSpec::build).collect()
    }
}

/// One `[[algorithms]]` entry: an algorithm id plus optional parameter
/// overrides. All parameter keys live in one flat namespace; `build`
/// rejects any key the chosen algorithm does not understand.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    pub id: AlgorithmId,

    // Splitting-schedule family (yi, yypo, dyypo).
    pub i_min: Option<usize>,
    pub i_max: Option<usize>,

    // yi only.
    pub sigma: Option<f64>,
    pub alpha_stability: Option<f64>,
    pub n_offspring: Option<usize>,
    pub scope_policy: Option<ScopePolicy>,

    // yypo and dyypo only.
    pub alpha_ec: Option<f64>,

    // Population family (de, pso).
    pub pop_size: Option<usize>,

    // de only.
    pub f_weight: Option<f64>,
    pub crossover_rate: Option<f64>,

    // pso only.
    pub w: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
}

impl AlgorithmSpec {
    /// A spec with no overrides: the algorithm's published defaults.
    pub fn plain(id: AlgorithmId) -> Self {
        AlgorithmSpec {
            id,
            i_min: None,
            i_max: None,
            sigma: None,
            alpha_stability: None,
            n_offspring: None,
            scope_policy: None,
            alpha_ec: None,
            pop_size: None,
            f_weight: None,
            crossover_rate: None,
            w: None,
            c1: None,
            c2: None,
        }
    }

    fn set_keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        if self.i_min.is_some() {
            keys.push("i_min");
        }
        if self.i_max.is_some() {
            keys.push("i_max");
        }
        if self.sigma.is_some() {
            keys.push("sigma");
        }
        if self.alpha_stability.is_some() {
            keys.push("alpha_stability");
        }
        if self.n_offspring.is_some() {
            keys.push("n_offspring");
        }
        if self.scope_policy.is_some() {
            keys.push("scope_policy");
        }
        if self.alpha_ec.is_some() {
            keys.push("alpha_ec");
        }
        if self.pop_size.is_some() {
            keys.push("pop_size");
        }
        if self.f_weight.is_some() {
            keys.push("f_weight");
        }
        if self.crossover_rate.is_some() {
            keys.push("crossover_rate");
        }
        if self.w.is_some() {
            keys.push("w");
        }
        if self.c1.is_some() {
            keys.push("c1");
        }
        if self.c2.is_some() {
            keys.push("c2");
        }
        keys
    }

    /// Applies the overrides to the algorithm's defaults and validates.
    pub fn build(&self) -> Result<AlgorithmConfig> {
        let allowed: &[&str] = match self.id {
            AlgorithmId::Yi => &[
                "i_min",
                "i_max",
                "sigma",
                "alpha_stability",
                "n_offspring",
                "scope_policy",
            ],
            AlgorithmId::Yypo | AlgorithmId::Dyypo => &["i_min", "i_max", "alpha_ec"],
            AlgorithmId::De => &["pop_size", "f_weight", "crossover_rate"],
            AlgorithmId::Pso => &["pop_size", "w", "c1", "c2"],
        };
        for key in self.set_keys() {
            if !allowed.contains(&key) {
                bail!("parameter {key} does not apply to algorithm {}", self.id);
            }
        }
        let mut config = AlgorithmConfig::default_for(self.id);
        match &mut config {
            AlgorithmConfig::Yi(p) => {
                apply(&mut p.i_min, self.i_min);
                apply(&mut p.i_max, self.i_max);
                apply(&mut p.sigma, self.sigma);
                apply(&mut p.alpha_stability, self.alpha_stability);
                apply(&mut p.n_offspring, self.n_offspring);
                apply(&mut p.scope_policy, self.scope_policy);
            }
            AlgorithmConfig::Yypo(p) => {
                apply(&mut p.i_min, self.i_min);
                apply(&mut p.i_max, self.i_max);
                apply(&mut p.alpha_ec, self.alpha_ec);
            }
            AlgorithmConfig::De(p) => {
                apply(&mut p.pop_size, self.pop_size);
                apply(&mut p.f_weight, self.f_weight);
                apply(&mut p.crossover_rate, self.crossover_rate);
            }
            AlgorithmConfig::Pso(p) => {
                apply(&mut p.pop_size, self.pop_size);
                apply(&mut p.w, self.w);
                apply(&mut p.c1, self.c1);
                apply(&mut p.c2, self.c2);
            }
        }
        config
            .validate()
            .with_context(|| format!("algorithm {}", self.id))?;
        Ok(config)
    }
}

/// Builds an override spec that pins every parameter of the given
/// splitting configuration, so a derived experiment reruns it exactly.
pub fn spec_from_yi(params: &YiParams) -> AlgorithmSpec {
    let mut spec = AlgorithmSpec::plain(AlgorithmId::Yi);
    spec.i_min = Some(params.i_min);
    spec.i_max = Some(params.i_max);
    spec.sigma = Some(params.sigma);
    spec.alpha_stability = Some(params.alpha_stability);
    spec.n_offspring = Some(params.n_offspring);
    spec.scope_policy = Some(params.scope_policy);
    spec
}

fn apply<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

/// Extracts the splitting-algorithm parameters from a built config.
pub fn yi_params_of(config: &AlgorithmConfig) -> Option<&YiParams> {
    match config {
        AlgorithmConfig::Yi(p) => Some(p),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_toml() -> &'static str {
        r#"
            root_seed = 42

            [[algorithms]]
            id = "yi"
        "#
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let config: ExperimentConfig = toml::from_str(minimal_toml()).unwrap();
        config.validate().unwrap();
        assert_eq!(config.root_seed, 42);
        assert_eq!(config.suite, "desk");
        assert_eq!(config.suite_seed, 1);
        assert_eq!(config.dims, vec![10]);
        assert_eq!(config.budget_multiplier, 10_000);
        assert_eq!(config.repetitions, 51);
        assert_eq!(config.significance, 0.05);
        assert_eq!(config.out_dir, PathBuf::from("results"));
        assert_eq!(config.workers, 0);
        assert_eq!(config.budget_for(10), 100_000);
    }

    #[test]
    fn unknown_top_level_key_is_rejected() {
        let text = r#"
            root_seed = 1
            budget_multipler = 100

            [[algorithms]]
            id = "yi"
        "#;
        let err = toml::from_str::<ExperimentConfig>(text).unwrap_err();
        assert!(err.to_string().contains("budget_multipler"), "{err}");
    }

    #[test]
    fn unknown_algorithm_key_is_rejected() {
        let text = r#"
            root_seed = 1

            [[algorithms]]
            id = "yi"
            sigm = 5.0
        "#;
        assert!(toml::from_str::<ExperimentConfig>(text).is_err());
    }

    #[test]
    fn inapplicable_parameter_is_rejected() {
        let text = r#"
            root_seed = 1

            [[algorithms]]
            id = "de"
            sigma = 5.0
        "#;
        let config: ExperimentConfig = toml::from_str(text).unwrap();
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("does not apply"), "{err}");
    }

    #[test]
    fn overrides_reach_the_built_params() {
        let text = r#"
            root_seed = 1

            [[algorithms]]
            id = "yi"
            sigma = 5.0
            i_min = 4
            scope_policy = "dimension_scaled_to_box"

            [[algorithms]]
            id = "pso"
            w = 0.4
        "#;
        let config: ExperimentConfig = toml::from_str(text).unwrap();
        config.validate().unwrap();
        let built = config.built_algorithms().unwrap();
        match &built[0] {
            AlgorithmConfig::Yi(p) => {
                assert_eq!(p.sigma, 5.0);
                assert_eq!(p.i_min, 4);
                assert_eq!(p.i_max, 15);
                assert_eq!(p.scope_policy, ScopePolicy::DimensionScaledToBox);
            }
            other => panic!("expected yi, got {other:?}"),
        }
        match &built[1] {
            AlgorithmConfig::Pso(p) => {
                assert_eq!(p.w, 0.4);
                assert_eq!(p.c1, 2.0);
            }
            other => panic!("expected pso, got {other:?}"),
        }
    }

    #[test]
    fn invalid_override_fails_build() {
        let mut spec = AlgorithmSpec::plain(AlgorithmId::Yi);
        spec.i_min = Some(20);
        // i_min above i_max violates the schedule ordering.
        assert!(spec.build().is_err());
    }

    #[test]
    fn duplicate_algorithm_is_rejected() {
        let text = r#"
            root_seed = 1

            [[algorithms]]
            id = "yi"

            [[algorithms]]
            id = "yi"
            sigma = 5.0
        "#;
        let config: ExperimentConfig = toml::from_str(text).unwrap();
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("twice"), "{err}");
    }

    #[test]
    fn yypo_and_dyypo_are_distinct_entries() {
        let text = r#"
            root_seed = 1

            [[algorithms]]
            id = "yypo"

            [[algorithms]]
            id = "dyypo"
            alpha_ec = 7.5
        "#;
        let config: ExperimentConfig = toml::from_str(text).unwrap();
        config.validate().unwrap();
        let built = config.built_algorithms().unwrap();
        assert_eq!(built[0].id(), AlgorithmId::Yypo);
        assert_eq!(built[1].id(), AlgorithmId::Dyypo);
        match &built[1] {
            AlgorithmConfig::Yypo(p) => assert_eq!(p.alpha_ec, 7.5),
            other => panic!("expected yypo params, got {other:?}"),
        }
    }

    #[test]
    fn named_suites_resolve_per_dimension() {
        let mut config: ExperimentConfig = toml::from_str(minimal_toml()).unwrap();
        config.suite = "smoke".to_string();
        config.dims = vec![5, 10];
        let problems = config.resolve_problems().unwrap();
        assert_eq!(problems.len(), 8);
        assert!(problems.iter().any(|p| p.id.ends_with("_5")));
        assert!(problems.iter().any(|p| p.id.ends_with("_10")));
    }

    #[test]
    fn manifest_suite_round_trips_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = dir.path().join("suite.tsv");
        let specs = smoke_suite(3, 9);
        fs::write(&manifest, yiopt_core::benchmarks::manifest_to_string(&specs)).unwrap();

        let mut config: ExperimentConfig = toml::from_str(minimal_toml()).unwrap();
        config.suite = manifest.to_string_lossy().into_owned();
        let resolved = config.resolve_problems().unwrap();
        assert_eq!(resolved, specs);
    }

    #[test]
    fn smoke_caps_repetitions_and_budget() {
        let mut config: ExperimentConfig = toml::from_str(minimal_toml()).unwrap();
        config.apply_smoke();
        assert_eq!(config.repetitions, 5);
        assert_eq!(config.budget_multiplier, 500);
        config.repetitions = 2;
        config.budget_multiplier = 100;
        config.apply_smoke();
        assert_eq!(config.repetitions, 2);
        assert_eq!(config.budget_multiplier, 100);
    }

    #[test]
    fn sweep_spec_pins_every_splitting_parameter() {
        let params = YiParams {
            sigma: 4.5,
            n_offspring: 7,
            ..YiParams::default()
        };
        let spec = spec_from_yi(&params);
        match spec.build().unwrap() {
            AlgorithmConfig::Yi(built) => assert_eq!(built, params),
            other => panic!("expected yi, got {other:?}"),
        }
    }
}
