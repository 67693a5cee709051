use crate::error::Error;
use crate::eval::{evaluate_counted, EvalBudget, Objective};
use crate::record::{RunRecord, RunRecorder};
use crate::rng::RngStream;
use crate::space::{repair_in_place, SearchSpace};
use serde::{Deserialize, Serialize};

/// Tunables of the particle-swarm baseline: constant inertia, global-best
/// topology, no velocity clamping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub pop_size: usize,
    /// Inertia weight.
    pub w: f64,
    /// Cognitive (personal-best) acceleration.
    pub c1: f64,
    /// Social (global-best) acceleration.
    pub c2: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        PsoParams {
            pop_size: 50,
            w: 0.9,
            c1: 2.0,
            c2: 2.0,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<(), Error> {
        if self.pop_size < 2 {
            return Err(Error::param("pop_size", "must be at least 2"));
        }
        for (name, value) in [("w", self.w), ("c1", self.c1), ("c2", self.c2)] {
            if !value.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
        }
        Ok(())
    }
}

/// Positions, velocities and the best-seen memory of one swarm.
#[derive(Debug, Clone)]
pub struct PsoSwarm {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    /// Best position each particle has seen.
    pub pbest_positions: Vec<Vec<f64>>,
    /// Fitness of each personal best.
    pub pbest_fitnesses: Vec<f64>,
    /// Best position the whole swarm has seen.
    pub gbest_position: Vec<f64>,
    /// Fitness of the swarm best.
    pub gbest_fitness: f64,
}

/// One generation: per particle, velocity
/// `w*v + c1*u1.(pbest - x) + c2*u2.(gbest - x)` with a fresh uniform
/// vector `u1` then `u2` (two draws per coordinate), position moved and
/// boundary-repaired (the velocity keeps its computed value), and both
/// bests updated on strict improvement.
///
/// Particles update asynchronously, so later particles see improvements
/// already found in the same generation. Stops early when the budget runs
/// out, leaving the remaining particles in place.
pub fn pso_generation<O: Objective + ?Sized>(
    swarm: &mut PsoSwarm,
    params: &PsoParams,
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
    rng: &mut RngStream,
) -> Result<(), Error> {
    params.validate()?;
    let dim = space.dim();
    let mut u1 = vec![0.0; dim];
    let mut u2 = vec![0.0; dim];
    for i in 0..swarm.positions.len() {
        if budget.is_exhausted() {
            break;
        }
        rng.fill_uniform(&mut u1);
        rng.fill_uniform(&mut u2);
        for j in 0..dim {
            let x = swarm.positions[i][j];
            let v = &mut swarm.velocities[i][j];
            *v = params.w * *v
                + params.c1 * u1[j] * (swarm.pbest_positions[i][j] - x)
                + params.c2 * u2[j] * (swarm.gbest_position[j] - x);
            swarm.positions[i][j] = x + *v;
        }
        repair_in_place(&mut swarm.positions[i], space, rng);
        let fitness = evaluate_counted(obj, &swarm.positions[i], budget)
            .expect("budget checked before the draw");
        if fitness < swarm.pbest_fitnesses[i] {
            swarm.pbest_fitnesses[i] = fitness;
            swarm.pbest_positions[i].clone_from(&swarm.positions[i]);
        }
        if fitness < swarm.gbest_fitness {
            swarm.gbest_fitness = fitness;
            swarm.gbest_position.clone_from(&swarm.positions[i]);
        }
    }
    Ok(())
}

/// Driver for one PSO run with generation-level access.
#[derive(Debug)]
pub struct PsoRun<'a, O: Objective + ?Sized> {
    params: PsoParams,
    space: &'a SearchSpace,
    obj: &'a O,
    budget: EvalBudget,
    rng: RngStream,
    swarm: PsoSwarm,
    recorder: RunRecorder,
}

impl<'a, O: Objective + ?Sized> PsoRun<'a, O> {
    /// Samples positions uniformly with zero initial velocities and
    /// evaluates them one at a time; a budget smaller than the swarm
    /// leaves the tail unevaluated (infinite personal best).
    pub fn new(
        obj: &'a O,
        space: &'a SearchSpace,
        params: PsoParams,
        t_max: u64,
        seed: u64,
        problem_label: &str,
    ) -> Result<Self, Error> {
        params.validate()?;
        let mut budget = EvalBudget::new(t_max)?;
        let mut rng = RngStream::new(seed);
        let mut recorder = RunRecorder::new(seed, "pso", problem_label);
        let dim = space.dim();
        let mut positions = Vec::with_capacity(params.pop_size);
        let mut pbest_fitnesses = Vec::with_capacity(params.pop_size);
        for _ in 0..params.pop_size {
            let x = space.sample_uniform(&mut rng);
            let fitness = match evaluate_counted(obj, &x, &mut budget) {
                Ok(f) => {
                    recorder.observe(budget.used(), &x, f);
                    f
                }
                Err(_) => f64::INFINITY,
            };
            positions.push(x);
            pbest_fitnesses.push(fitness);
        }
        let mut best = 0;
        for i in 1..pbest_fitnesses.len() {
            if pbest_fitnesses[i] < pbest_fitnesses[best] {
                best = i;
            }
        }
        let swarm = PsoSwarm {
            velocities: vec![vec![0.0; dim]; params.pop_size],
            pbest_positions: positions.clone(),
            gbest_position: positions[best].clone(),
            gbest_fitness: pbest_fitnesses[best],
            positions,
            pbest_fitnesses,
        };
        Ok(PsoRun {
            params,
            space,
            obj,
            budget,
            rng,
            swarm,
            recorder,
        })
    }

    pub fn swarm(&self) -> &PsoSwarm {
        &self.swarm
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    /// Runs one generation. Returns false once the budget is exhausted.
    pub fn step(&mut self) -> bool {
        if self.budget.is_exhausted() {
            return false;
        }
        pso_generation(
            &mut self.swarm,
            &self.params,
            self.space,
            self.obj,
            &mut self.budget,
            &mut self.rng,
        )
        .expect("params validated at construction");
        self.recorder.observe(
            self.budget.used(),
            &self.swarm.gbest_position,
            self.swarm.gbest_fitness,
        );
        true
    }

    /// Runs to budget exhaustion and seals the record.
    pub fn finish(mut self) -> RunRecord {
        while self.step() {}
        self.recorder.finish(self.budget.used())
    }
}

/// Runs the PSO baseline to budget exhaustion.
pub fn run_pso<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    params: &PsoParams,
    t_max: u64,
    seed: u64,
    problem_label: &str,
) -> Result<RunRecord, Error> {
    Ok(PsoRun::new(obj, space, params.clone(), t_max, seed, problem_label)?.finish())
}
