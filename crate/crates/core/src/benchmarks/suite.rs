use crate::benchmarks::base::BaseFunction;
use crate::benchmarks::composition::{CompositionComponent, CompositionProblem};
use crate::benchmarks::problem::BenchmarkProblem;
use crate::benchmarks::rotation::random_orthogonal;
use crate::error::Error;
use crate::eval::Objective;
use crate::rng::{derive_seed, RngStream};
use crate::space::SearchSpace;
use serde::{Deserialize, Serialize};

/// What a suite entry instantiates: a single base function or the
/// three-part composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteFunction {
    Base(BaseFunction),
    Composition3,
}

impl SuiteFunction {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteFunction::Base(b) => b.name(),
            SuiteFunction::Composition3 => "composition3",
        }
    }
}

impl std::str::FromStr for SuiteFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "composition3" {
            return Ok(SuiteFunction::Composition3);
        }
        Ok(SuiteFunction::Base(s.parse()?))
    }
}

impl std::fmt::Display for SuiteFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Declarative description of one benchmark instance. The instance (shift,
/// rotation) is a pure function of `(seed, id, dim)`, so a manifest line is
/// enough to reconstruct it bit-identically anywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub id: String,
    pub function: SuiteFunction,
    pub dim: usize,
    pub seed: u64,
    pub bias: f64,
}

/// A runnable benchmark instance from either family.
#[derive(Debug, Clone)]
pub enum SuiteProblem {
    Single(BenchmarkProblem),
    Composition(CompositionProblem),
}

impl SuiteProblem {
    pub fn id(&self) -> &str {
        match self {
            SuiteProblem::Single(p) => p.id(),
            SuiteProblem::Composition(p) => p.id(),
        }
    }

    pub fn space(&self) -> &SearchSpace {
        match self {
            SuiteProblem::Single(p) => p.space(),
            SuiteProblem::Composition(p) => p.space(),
        }
    }

    pub fn bias(&self) -> f64 {
        match self {
            SuiteProblem::Single(p) => p.bias(),
            SuiteProblem::Composition(p) => p.bias(),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            SuiteProblem::Single(p) => p.evaluate(x),
            SuiteProblem::Composition(p) => p.evaluate(x),
        }
    }

    /// Achieved value minus the known global minimum.
    pub fn error_value(&self, x: &[f64]) -> f64 {
        self.evaluate(x) - self.bias()
    }

    pub fn known_optimum(&self) -> Vec<f64> {
        match self {
            SuiteProblem::Single(p) => p.known_optimum(),
            SuiteProblem::Composition(p) => p.known_optimum(),
        }
    }
}

impl Objective for SuiteProblem {
    fn eval(&self, x: &[f64]) -> f64 {
        self.evaluate(x)
    }
}

impl ProblemSpec {
    pub fn new(
        id: impl Into<String>,
        function: SuiteFunction,
        dim: usize,
        seed: u64,
        bias: f64,
    ) -> Self {
        ProblemSpec {
            id: id.into(),
            function,
            dim,
            seed,
            bias,
        }
    }

    /// Builds the concrete instance. All randomness comes from a stream
    /// seeded by `(seed, id, dim)`: the shift is drawn first (one draw per
    /// coordinate, uniform over the middle 80% of the box so optima stay
    /// interior), then the rotation when the function admits one.
    pub fn instantiate(&self) -> Result<SuiteProblem, Error> {
        let mut rng = RngStream::new(derive_seed(
            self.seed,
            &["suite", &self.id, &self.dim.to_string()],
        ));
        match self.function {
            SuiteFunction::Base(base) => {
                let hw = base.default_half_width();
                let space = SearchSpace::symmetric(self.dim, hw)?;
                let shift = if base.shiftable() {
                    (0..self.dim)
                        .map(|_| rng.uniform_in(-0.8 * hw, 0.8 * hw))
                        .collect()
                } else {
                    vec![0.0; self.dim]
                };
                let rotation = if base.rotatable() {
                    Some(random_orthogonal(self.dim, &mut rng)?)
                } else {
                    None
                };
                Ok(SuiteProblem::Single(BenchmarkProblem::new(
                    self.id.clone(),
                    base,
                    shift,
                    rotation,
                    self.bias,
                    space,
                )?))
            }
            SuiteFunction::Composition3 => {
                let hw = 100.0;
                let space = SearchSpace::symmetric(self.dim, hw)?;
                let recipe = [
                    (BaseFunction::Rastrigin, 10.0, 1.0, 0.0),
                    (BaseFunction::Griewank, 20.0, 10.0, 100.0),
                    (BaseFunction::Ackley, 30.0, 10.0, 200.0),
                ];
                let mut components = Vec::with_capacity(recipe.len());
                for (base, sigma, lambda, offset) in recipe {
                    let shift: Vec<f64> = (0..self.dim)
                        .map(|_| rng.uniform_in(-0.8 * hw, 0.8 * hw))
                        .collect();
                    let rotation = Some(random_orthogonal(self.dim, &mut rng)?);
                    components.push(CompositionComponent {
                        base,
                        shift,
                        rotation,
                        sigma,
                        lambda,
                        offset,
                    });
                }
                Ok(SuiteProblem::Composition(CompositionProblem::new(
                    self.id.clone(),
                    components,
                    self.bias,
                    space,
                )?))
            }
        }
    }
}

fn spec(idx: usize, base: BaseFunction, dim: usize, seed: u64) -> ProblemSpec {
    ProblemSpec::new(
        format!("{}_{dim}", base.name()),
        SuiteFunction::Base(base),
        dim,
        seed,
        100.0 * idx as f64,
    )
}

/// The default desk-scale suite: ten instances spanning unimodal,
/// multimodal, and composed landscapes, with value bias `100 k` on the
/// k-th entry.
pub fn desk_suite(dim: usize, seed: u64) -> Vec<ProblemSpec> {
    let bases = [
        BaseFunction::BentCigar,
        BaseFunction::Zakharov,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Levy,
        BaseFunction::SchafferF7,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel,
    ];
    let mut specs: Vec<ProblemSpec> = bases
        .iter()
        .enumerate()
        .map(|(i, &b)| spec(i + 1, b, dim, seed))
        .collect();
    specs.push(ProblemSpec::new(
        format!("composition3_{dim}"),
        SuiteFunction::Composition3,
        dim,
        seed,
        100.0 * (bases.len() + 1) as f64,
    ));
    specs
}

/// Small four-problem suite for fast end-to-end checks.
pub fn smoke_suite(dim: usize, seed: u64) -> Vec<ProblemSpec> {
    [
        BaseFunction::Sphere,
        BaseFunction::Zakharov,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
    ]
    .iter()
    .enumerate()
    .map(|(i, &b)| spec(i + 1, b, dim, seed))
    .collect()
}

/// Serializes specs as a tab-separated text manifest with a header comment.
pub fn manifest_to_string(specs: &[ProblemSpec]) -> String {
    let mut out = String::from("# suite manifest: id\tfunction\tdim\tseed\tbias\n");
    for s in specs {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            s.id, s.function, s.dim, s.seed, s.bias
        ));
    }
    out
}

/// Parses a manifest produced by [`manifest_to_string`]. Blank lines and
/// `#` comments are ignored.
pub fn manifest_from_str(text: &str) -> Result<Vec<ProblemSpec>, Error> {
    let mut specs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(Error::MalformedManifest {
                line: lineno + 1,
                reason: format!("expected 5 tab-separated fields, got {}", fields.len()),
            });
        }
        let malformed = |reason: String| Error::MalformedManifest {
            line: lineno + 1,
            reason,
        };
        let function: SuiteFunction = fields[1]
            .parse()
            .map_err(|e: Error| malformed(e.to_string()))?;
        let dim: usize = fields[2]
            .parse()
            .map_err(|_| malformed(format!("bad dim {:?}", fields[2])))?;
        let seed: u64 = fields[3]
            .parse()
            .map_err(|_| malformed(format!("bad seed {:?}", fields[3])))?;
        let bias: f64 = fields[4]
            .parse()
            .map_err(|_| malformed(format!("bad bias {:?}", fields[4])))?;
        specs.push(ProblemSpec::new(fields[0], function, dim, seed, bias));
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible_from_spec() {
        let spec = ProblemSpec::new(
            "rastrigin_10",
            SuiteFunction::Base(BaseFunction::Rastrigin),
            10,
            2017,
            400.0,
        );
        let a = spec.instantiate().unwrap();
        let b = spec.instantiate().unwrap();
        let mut rng = RngStream::new(1);
        for _ in 0..100 {
            let x = a.space().sample_uniform(&mut rng);
            assert_eq!(a.evaluate(&x).to_bits(), b.evaluate(&x).to_bits());
        }
    }

    #[test]
    fn different_seeds_give_different_instances() {
        let mk = |seed| {
            ProblemSpec::new(
                "levy_5",
                SuiteFunction::Base(BaseFunction::Levy),
                5,
                seed,
                0.0,
            )
            .instantiate()
            .unwrap()
        };
        let a = mk(1);
        let b = mk(2);
        assert_ne!(a.known_optimum(), b.known_optimum());
    }

    #[test]
    fn desk_suite_instances_all_validate() {
        for spec in desk_suite(10, 2017) {
            let p = spec.instantiate().unwrap();
            let opt = p.known_optimum();
            assert!(p.space().contains(&opt), "{} optimum outside box", p.id());
            let residual = p.error_value(&opt);
            assert!(
                residual.abs() < 1e-9,
                "{} residual {residual} at optimum",
                p.id()
            );
            assert_eq!(p.bias(), spec.bias);
        }
    }

    #[test]
    fn desk_suite_biases_follow_the_hundred_step() {
        let specs = desk_suite(10, 1);
        assert_eq!(specs.len(), 10);
        for (i, s) in specs.iter().enumerate() {
            assert_eq!(s.bias, 100.0 * (i + 1) as f64);
        }
    }

    #[test]
    fn smoke_suite_is_small_and_valid() {
        let specs = smoke_suite(10, 7);
        assert_eq!(specs.len(), 4);
        for spec in specs {
            spec.instantiate().unwrap();
        }
    }

    #[test]
    fn manifest_round_trips() {
        let specs = desk_suite(10, 2017);
        let text = manifest_to_string(&specs);
        let back = manifest_from_str(&text).unwrap();
        assert_eq!(specs, back);
    }

    #[test]
    fn manifest_rejects_garbage() {
        assert!(manifest_from_str("one\ttwo\tthree\n").is_err());
        assert!(manifest_from_str("x\tnot_a_function\t10\t1\t0\n").is_err());
        assert!(manifest_from_str("x\tsphere\tten\t1\t0\n").is_err());
        assert!(manifest_from_str("# only comments\n\n").unwrap().is_empty());
    }

    #[test]
    fn schwefel_entry_is_never_shifted_or_rotated() {
        let spec = ProblemSpec::new(
            "schwefel_10",
            SuiteFunction::Base(BaseFunction::Schwefel),
            10,
            999,
            0.0,
        );
        match spec.instantiate().unwrap() {
            SuiteProblem::Single(p) => {
                assert!(p.shift().iter().all(|&v| v == 0.0));
                assert!(p.rotation().is_none());
            }
            _ => unreachable!(),
        }
    }
}
