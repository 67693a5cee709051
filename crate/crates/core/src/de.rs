use crate::error::Error;
use crate::eval::{evaluate_counted, EvalBudget, Objective};
use crate::record::{RunRecord, RunRecorder};
use crate::rng::RngStream;
use crate::space::{repair_in_place, SearchSpace};
use serde::{Deserialize, Serialize};

/// Tunables of the differential-evolution baseline, rand/1/bin scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeParams {
    pub pop_size: usize,
    /// Weight on the donor difference vector.
    pub f_weight: f64,
    /// Binomial crossover rate; one coordinate per trial is always taken
    /// from the mutant regardless of the rate.
    pub crossover_rate: f64,
}

impl Default for DeParams {
    fn default() -> Self {
        DeParams {
            pop_size: 50,
            f_weight: 0.5,
            crossover_rate: 0.001,
        }
    }
}

impl DeParams {
    pub fn validate(&self) -> Result<(), Error> {
        if self.pop_size < 4 {
            return Err(Error::param(
                "pop_size",
                "must be at least 4 so three donors distinct from the target exist",
            ));
        }
        if !self.f_weight.is_finite() {
            return Err(Error::param("f_weight", "must be finite"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::param(
                "crossover_rate",
                format!("must be in [0, 1], got {}", self.crossover_rate),
            ));
        }
        Ok(())
    }
}

/// Uniform index below `n` avoiding `exclude`, by rejection.
fn distinct_index(rng: &mut RngStream, n: usize, exclude: &[usize]) -> usize {
    loop {
        let i = rng.uniform_index(n);
        if !exclude.contains(&i) {
            return i;
        }
    }
}

/// Donor combination `base + f * (a - b)`.
fn mutant(base: &[f64], a: &[f64], b: &[f64], f_weight: f64) -> Vec<f64> {
    base.iter()
        .zip(a)
        .zip(b)
        .map(|((&x1, &x2), &x3)| x1 + f_weight * (x2 - x3))
        .collect()
}

/// Binomial crossover: each coordinate comes from the mutant with
/// probability `rate`, and the forced coordinate unconditionally.
///
/// Consumes one draw for the forced index and then one rate draw per
/// coordinate (the forced one included), keeping the stream length fixed.
fn crossover(target: &[f64], mutant: &[f64], rate: f64, rng: &mut RngStream) -> Vec<f64> {
    let forced = rng.uniform_index(target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&from_target, &from_mutant))| {
            let take = rng.next_uniform() < rate;
            if take || j == forced {
                from_mutant
            } else {
                from_target
            }
        })
        .collect()
}

/// One generation over the whole population: for each target, a rand/1
/// mutant from three distinct donors (read from the generation-start
/// snapshot), binomial crossover, boundary repair, then strictly greedy
/// selection. Stops early when the budget runs out, leaving the remaining
/// targets untouched.
pub fn de_generation<O: Objective + ?Sized>(
    pop: &mut [Vec<f64>],
    fitnesses: &mut [f64],
    params: &DeParams,
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
    rng: &mut RngStream,
) -> Result<(), Error> {
    params.validate()?;
    if pop.len() != fitnesses.len() {
        return Err(Error::param(
            "fitnesses",
            format!("{} values for {} individuals", fitnesses.len(), pop.len()),
        ));
    }
    if pop.len() < 4 {
        return Err(Error::param("pop", "needs at least 4 individuals"));
    }
    let donors = pop.to_vec();
    for i in 0..pop.len() {
        if budget.is_exhausted() {
            break;
        }
        let r1 = distinct_index(rng, pop.len(), &[i]);
        let r2 = distinct_index(rng, pop.len(), &[i, r1]);
        let r3 = distinct_index(rng, pop.len(), &[i, r1, r2]);
        let donor = mutant(&donors[r1], &donors[r2], &donors[r3], params.f_weight);
        let mut trial = crossover(&pop[i], &donor, params.crossover_rate, rng);
        repair_in_place(&mut trial, space, rng);
        let fitness =
            evaluate_counted(obj, &trial, budget).expect("budget checked before the draw");
        if fitness < fitnesses[i] {
            pop[i] = trial;
            fitnesses[i] = fitness;
        }
    }
    Ok(())
}

/// Driver for one DE run with generation-level access.
#[derive(Debug)]
pub struct DeRun<'a, O: Objective + ?Sized> {
    params: DeParams,
    space: &'a SearchSpace,
    obj: &'a O,
    budget: EvalBudget,
    rng: RngStream,
    pop: Vec<Vec<f64>>,
    fitnesses: Vec<f64>,
    recorder: RunRecorder,
}

impl<'a, O: Objective + ?Sized> DeRun<'a, O> {
    /// Samples and evaluates the initial population, one individual at a
    /// time. A budget smaller than the population leaves the tail
    /// unevaluated (infinite fitness), and the run ends immediately.
    pub fn new(
        obj: &'a O,
        space: &'a SearchSpace,
        params: DeParams,
        t_max: u64,
        seed: u64,
        problem_label: &str,
    ) -> Result<Self, Error> {
        params.validate()?;
        let mut budget = EvalBudget::new(t_max)?;
        let mut rng = RngStream::new(seed);
        let mut recorder = RunRecorder::new(seed, "de", problem_label);
        let mut pop = Vec::with_capacity(params.pop_size);
        let mut fitnesses = Vec::with_capacity(params.pop_size);
        for _ in 0..params.pop_size {
            let x = space.sample_uniform(&mut rng);
            let fitness = match evaluate_counted(obj, &x, &mut budget) {
                Ok(f) => {
                    recorder.observe(budget.used(), &x, f);
                    f
                }
                Err(_) => f64::INFINITY,
            };
            pop.push(x);
            fitnesses.push(fitness);
        }
        Ok(DeRun {
            params,
            space,
            obj,
            budget,
            rng,
            pop,
            fitnesses,
            recorder,
        })
    }

    pub fn population(&self) -> &[Vec<f64>] {
        &self.pop
    }

    pub fn fitnesses(&self) -> &[f64] {
        &self.fitnesses
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    /// Runs one generation. Returns false once the budget is exhausted.
    pub fn step(&mut self) -> bool {
        if self.budget.is_exhausted() {
            return false;
        }
        de_generation(
            &mut self.pop,
            &mut self.fitnesses,
            &self.params,
            self.space,
            self.obj,
            &mut self.budget,
            &mut self.rng,
        )
        .expect("population shape fixed at construction");
        // Greedy selection keeps the best individual in the population, so
        // the generation argmin equals the running best.
        let mut best = 0;
        for i in 1..self.fitnesses.len() {
            if self.fitnesses[i] < self.fitnesses[best] {
                best = i;
            }
        }
        self.recorder
            .observe(self.budget.used(), &self.pop[best], self.fitnesses[best]);
        true
    }

    /// Runs to budget exhaustion and seals the record.
    pub fn finish(mut self) -> RunRecord {
        while self.step() {}
        self.recorder.finish(self.budget.used())
    }
}

/// Runs the DE baseline to budget exhaustion.
pub fn run_de<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    params: &DeParams,
    t_max: u64,
    seed: u64,
    problem_label: &str,
) -> Result<RunRecord, Error> {
    Ok(DeRun::new(obj, space, params.clone(), t_max, seed, problem_label)?.finish())
}
