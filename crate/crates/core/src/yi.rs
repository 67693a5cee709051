use crate::error::Error;
use crate::eval::{evaluate_counted, BudgetExhausted, EvalBudget, Objective};
use crate::record::{RunRecord, RunRecorder};
use crate::rng::RngStream;
use crate::schedule::equal_interval_boundaries;
use crate::space::{repair_in_place, SearchSpace};
use crate::stable::{sample_stable, StableParams};
use serde::{Deserialize, Serialize};

/// How the initial flight scope is derived from the problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopePolicy {
    /// Scope starts at the dimension count. The sensible default on the
    /// standard `[-100, 100]` boxes.
    Dimension,
    /// Scope starts at `dim * mean half width / 100`, which reproduces the
    /// Dimension policy on the standard boxes but adapts to rescaled ones.
    DimensionScaledToBox,
}

/// Tunables of the Yi optimizer.
///
/// One tracked point emits a cloud of heavy-tailed offspring each split;
/// the flight scope decays by `1/sigma` at every boundary of an
/// equal-sized evaluation-count schedule while the archive reset period
/// walks down from `i_max` to `i_min`, one step per boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YiParams {
    /// Final (smallest) archive reset period.
    pub i_min: usize,
    /// Initial (largest) archive reset period.
    pub i_max: usize,
    /// Scope decay divisor applied at every interval boundary.
    pub sigma: f64,
    /// Stability index of the offspring step distribution.
    pub alpha_stability: f64,
    /// Offspring evaluated per split; 0 means the default `2 * dim`.
    pub n_offspring: usize,
    pub scope_policy: ScopePolicy,
}

impl Default for YiParams {
    fn default() -> Self {
        YiParams {
            i_min: 6,
            i_max: 15,
            sigma: 3.0,
            alpha_stability: 1.5,
            n_offspring: 0,
            scope_policy: ScopePolicy::Dimension,
        }
    }
}

impl YiParams {
    pub fn validate(&self) -> Result<(), Error> {
        if self.i_min < 1 {
            return Err(Error::param("i_min", "must be at least 1"));
        }
        if self.i_max < self.i_min {
            return Err(Error::param(
                "i_max",
                format!("must be >= i_min, got {} < {}", self.i_max, self.i_min),
            ));
        }
        if !(self.sigma > 1.0 && self.sigma.is_finite()) {
            return Err(Error::param(
                "sigma",
                format!("must be finite and > 1, got {}", self.sigma),
            ));
        }
        if !(self.alpha_stability > 0.0 && self.alpha_stability <= 2.0) {
            return Err(Error::param(
                "alpha_stability",
                format!("must be in (0, 2], got {}", self.alpha_stability),
            ));
        }
        Ok(())
    }

    /// Number of schedule intervals: one per archive-length value from
    /// `i_max` down to `i_min`, plus a final interval at the floor. The
    /// canonical 6..15 range gives 11 intervals and therefore 10 scope
    /// decays; a single-value range degenerates to one interval with no
    /// decay at all.
    pub fn interval_count(&self) -> usize {
        if self.i_max == self.i_min {
            1
        } else {
            self.i_max - self.i_min + 2
        }
    }

    /// Offspring per split for a problem of dimension `dim`.
    pub fn offspring_for(&self, dim: usize) -> usize {
        if self.n_offspring == 0 {
            2 * dim
        } else {
            self.n_offspring
        }
    }

    /// Initial flight scope for a search space.
    pub fn initial_scope(&self, space: &SearchSpace) -> f64 {
        let dim = space.dim() as f64;
        match self.scope_policy {
            ScopePolicy::Dimension => dim,
            ScopePolicy::DimensionScaledToBox => dim * space.mean_half_width() / 100.0,
        }
    }
}

/// Mutable state of one Yi run.
#[derive(Debug, Clone)]
pub struct YiState {
    /// The single tracked point.
    pub p0: Vec<f64>,
    /// Fitness of `p0`.
    pub f0: f64,
    /// Best point found so far.
    pub gbest: Vec<f64>,
    /// Fitness of `gbest`.
    pub f_gbest: f64,
    /// Current flight scope.
    pub eps: f64,
    /// Splits until the next archive reset.
    pub i_current: usize,
    /// Splits done since the last archive reset.
    pub split_counter: usize,
    /// Interval boundaries already crossed.
    pub interval_index: usize,
}

/// Evaluation counts at which the scope decays and the reset period steps
/// down: the interior boundaries of `interval_count` equal spans of
/// `t_max`.
pub fn interval_boundaries(t_max: u64, params: &YiParams) -> Result<Vec<u64>, Error> {
    params.validate()?;
    equal_interval_boundaries(t_max, params.interval_count())
}

/// One splitting step: evaluates up to `n_offspring` candidates
/// `p0 + eps * step` with heavy-tailed steps, each boundary-repaired, and
/// returns the best of them.
///
/// Each candidate consumes `2 * dim` draws for its step vector plus one per
/// repaired coordinate, in that order. If the budget runs out mid-split the
/// best among the candidates already evaluated is returned; if no candidate
/// could be evaluated at all, the budget signal is propagated.
pub fn cauchy_split<O: Objective + ?Sized>(
    state: &YiState,
    params: &YiParams,
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
    rng: &mut RngStream,
) -> Result<(Vec<f64>, f64), BudgetExhausted> {
    let dim = space.dim();
    let stable = StableParams::new(params.alpha_stability, 1.0)
        .expect("alpha validated with params");
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut candidate = vec![0.0; dim];
    for _ in 0..params.offspring_for(dim) {
        if budget.is_exhausted() {
            break;
        }
        for (slot, &origin) in candidate.iter_mut().zip(&state.p0) {
            *slot = origin + state.eps * sample_stable(&stable, rng);
        }
        repair_in_place(&mut candidate, space, rng);
        let fitness = evaluate_counted(obj, &candidate, budget)
            .expect("budget checked before the draw");
        if best.as_ref().is_none_or(|(_, f)| fitness < *f) {
            best = Some((candidate.clone(), fitness));
        }
    }
    best.ok_or(BudgetExhausted)
}

/// One full Yi iteration: split, adopt the local best unconditionally, and
/// update the global best on strict improvement.
pub fn yi_step<O: Objective + ?Sized>(
    state: &mut YiState,
    params: &YiParams,
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
    rng: &mut RngStream,
) -> Result<(), BudgetExhausted> {
    let (lbest, f_lbest) = cauchy_split(state, params, space, obj, budget, rng)?;
    if f_lbest < state.f_gbest {
        state.gbest.clone_from(&lbest);
        state.f_gbest = f_lbest;
    }
    // The tracked point follows the local best even when it is worse; only
    // gbest is kept greedily.
    state.p0 = lbest;
    state.f0 = f_lbest;
    state.split_counter += 1;
    Ok(())
}

/// Archive reset: pulls the tracked point back to the global best. Due
/// once `split_counter` has reached `i_current`; calling early is an error.
pub fn archive_reset(state: &mut YiState) -> Result<(), Error> {
    if state.split_counter < state.i_current {
        return Err(Error::OutOfOrder(format!(
            "archive reset after {} of {} splits",
            state.split_counter, state.i_current
        )));
    }
    state.p0.clone_from(&state.gbest);
    state.f0 = state.f_gbest;
    state.split_counter = 0;
    Ok(())
}

/// Interval boundary crossing: scope divides by `sigma`, the reset period
/// steps down by one but never below `i_min`.
pub fn interval_advance(state: &mut YiState, params: &YiParams) {
    state.eps /= params.sigma;
    if state.i_current > params.i_min {
        state.i_current -= 1;
    }
    state.interval_index += 1;
}

/// Driver for one Yi run with step-level access for instrumentation.
#[derive(Debug)]
pub struct YiRun<'a, O: Objective + ?Sized> {
    params: YiParams,
    space: &'a SearchSpace,
    obj: &'a O,
    budget: EvalBudget,
    rng: RngStream,
    state: YiState,
    boundaries: Vec<u64>,
    recorder: RunRecorder,
}

impl<'a, O: Objective + ?Sized> YiRun<'a, O> {
    /// Sets up the run and spends one evaluation on the initial point.
    pub fn new(
        obj: &'a O,
        space: &'a SearchSpace,
        params: YiParams,
        t_max: u64,
        seed: u64,
        problem_label: &str,
    ) -> Result<Self, Error> {
        params.validate()?;
        let boundaries = interval_boundaries(t_max, &params)?;
        let mut budget = EvalBudget::new(t_max)?;
        let mut rng = RngStream::new(seed);
        let mut recorder = RunRecorder::new(seed, "yi", problem_label);
        let p0 = space.sample_uniform(&mut rng);
        let f0 = evaluate_counted(obj, &p0, &mut budget).expect("budget is at least 1");
        recorder.observe(budget.used(), &p0, f0);
        let state = YiState {
            gbest: p0.clone(),
            f_gbest: f0,
            eps: params.initial_scope(space),
            i_current: params.i_max,
            split_counter: 0,
            interval_index: 0,
            p0,
            f0,
        };
        Ok(YiRun {
            params,
            space,
            obj,
            budget,
            rng,
            state,
            boundaries,
            recorder,
        })
    }

    pub fn state(&self) -> &YiState {
        &self.state
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    pub fn boundaries(&self) -> &[u64] {
        &self.boundaries
    }

    /// Uniform variates consumed so far, for draw-count accounting.
    pub fn draws(&self) -> u64 {
        self.rng.draws()
    }

    /// Runs one split iteration (plus any due schedule transitions).
    /// Returns false once the budget is exhausted.
    pub fn step(&mut self) -> bool {
        if self.budget.is_exhausted() {
            return false;
        }
        // Boundaries are crossed by cumulative evaluation count; several may
        // be due at once after a large split.
        while self.state.interval_index < self.boundaries.len()
            && self.budget.used() >= self.boundaries[self.state.interval_index]
        {
            interval_advance(&mut self.state, &self.params);
            self.recorder.mark(self.budget.used());
        }
        if self.state.split_counter >= self.state.i_current {
            archive_reset(&mut self.state).expect("reset due by the check above");
        }
        match yi_step(
            &mut self.state,
            &self.params,
            self.space,
            self.obj,
            &mut self.budget,
            &mut self.rng,
        ) {
            Ok(()) => {
                self.recorder
                    .observe(self.budget.used(), &self.state.p0, self.state.f0);
                true
            }
            Err(BudgetExhausted) => false,
        }
    }

    /// Runs to budget exhaustion and seals the record.
    pub fn finish(mut self) -> RunRecord {
        while self.step() {}
        self.recorder.finish(self.budget.used())
    }
}

/// Runs the Yi optimizer to budget exhaustion.
pub fn run_yi<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    params: &YiParams,
    t_max: u64,
    seed: u64,
    problem_label: &str,
) -> Result<RunRecord, Error> {
    Ok(YiRun::new(obj, space, params.clone(), t_max, seed, problem_label)?.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{BaseFunction, BenchmarkProblem};

    fn sphere(dim: usize) -> BenchmarkProblem {
        BenchmarkProblem::plain(BaseFunction::Sphere, dim).unwrap()
    }

    #[test]
    fn defaults_match_documented_values() {
        let p = YiParams::default();
        assert_eq!(p.i_min, 6);
        assert_eq!(p.i_max, 15);
        assert_eq!(p.sigma, 3.0);
        assert_eq!(p.alpha_stability, 1.5);
        assert_eq!(p.interval_count(), 11);
        assert_eq!(p.offspring_for(10), 20);
        let space = SearchSpace::symmetric(10, 100.0).unwrap();
        assert_eq!(p.initial_scope(&space), 10.0);
    }

    #[test]
    fn canonical_schedule_boundaries() {
        let b = interval_boundaries(100_000, &YiParams::default()).unwrap();
        assert_eq!(b.len(), 10);
        assert_eq!(b[0], 9_091);
        assert_eq!(b[1], 18_182);
        assert_eq!(*b.last().unwrap(), 90_909);
        let single = interval_boundaries(
            100_000,
            &YiParams {
                i_min: 9,
                i_max: 9,
                ..YiParams::default()
            },
        )
        .unwrap();
        assert!(single.is_empty());
    }

    #[test]
    fn validation_rejects_bad_params() {
        let bad = |f: fn(&mut YiParams)| {
            let mut p = YiParams::default();
            f(&mut p);
            p.validate()
        };
        assert!(bad(|p| p.i_min = 0).is_err());
        assert!(bad(|p| p.i_max = 3).is_err());
        assert!(bad(|p| p.sigma = 1.0).is_err());
        assert!(bad(|p| p.sigma = f64::INFINITY).is_err());
        assert!(bad(|p| p.alpha_stability = 0.0).is_err());
        assert!(bad(|p| p.alpha_stability = 2.5).is_err());
        assert!(YiParams::default().validate().is_ok());
    }

    #[test]
    fn split_consumes_documented_draws_without_repairs() {
        // A huge box makes boundary violations (and their extra draws)
        // impossible, so the stream advances by exactly 2 * dim per
        // candidate.
        let dim = 7;
        let space = SearchSpace::symmetric(dim, 1e12).unwrap();
        let obj = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let params = YiParams::default();
        let mut budget = EvalBudget::new(1000).unwrap();
        let mut rng = RngStream::new(5);
        let state = YiState {
            p0: vec![0.0; dim],
            f0: 0.0,
            gbest: vec![0.0; dim],
            f_gbest: 0.0,
            eps: 1.0,
            i_current: 15,
            split_counter: 0,
            interval_index: 0,
        };
        let before = rng.draws();
        cauchy_split(&state, &params, &space, &obj, &mut budget, &mut rng).unwrap();
        assert_eq!(rng.draws() - before, (2 * dim * 2 * dim) as u64);
        assert_eq!(budget.used(), 2 * dim as u64);
    }

    #[test]
    fn zero_scope_collapses_candidates_onto_p0() {
        let dim = 4;
        let space = SearchSpace::symmetric(dim, 100.0).unwrap();
        let obj = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let params = YiParams::default();
        let mut budget = EvalBudget::new(100).unwrap();
        let mut rng = RngStream::new(6);
        let state = YiState {
            p0: vec![1.5; dim],
            f0: 9.0,
            gbest: vec![1.5; dim],
            f_gbest: 9.0,
            eps: 0.0,
            i_current: 15,
            split_counter: 0,
            interval_index: 0,
        };
        let (best, f) =
            cauchy_split(&state, &params, &space, &obj, &mut budget, &mut rng).unwrap();
        assert_eq!(best, vec![1.5; dim]);
        assert_eq!(f, 9.0);
    }

    #[test]
    fn split_returns_partial_result_on_exhaustion() {
        let space = SearchSpace::symmetric(3, 100.0).unwrap();
        let obj = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let params = YiParams::default();
        let state = YiState {
            p0: vec![10.0; 3],
            f0: 300.0,
            gbest: vec![10.0; 3],
            f_gbest: 300.0,
            eps: 1.0,
            i_current: 15,
            split_counter: 0,
            interval_index: 0,
        };
        let mut rng = RngStream::new(8);
        let mut budget = EvalBudget::new(2).unwrap();
        // Only 2 of 6 offspring fit in the budget.
        let result = cauchy_split(&state, &params, &space, &obj, &mut budget, &mut rng);
        assert!(result.is_ok());
        assert_eq!(budget.used(), 2);
        let mut spent = EvalBudget::new(1).unwrap();
        evaluate_counted(&obj, &[0.0; 3], &mut spent).unwrap();
        assert_eq!(
            cauchy_split(&state, &params, &space, &obj, &mut spent, &mut rng).unwrap_err(),
            BudgetExhausted
        );
    }

    #[test]
    fn step_adopts_local_best_unconditionally_but_gbest_strictly() {
        let space = SearchSpace::symmetric(2, 100.0).unwrap();
        let obj = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let params = YiParams::default();
        let mut rng = RngStream::new(3);
        let mut budget = EvalBudget::new(10_000).unwrap();
        let mut state = YiState {
            p0: vec![0.001, 0.001],
            f0: 2e-6,
            gbest: vec![0.001, 0.001],
            f_gbest: 2e-6,
            eps: 50.0,
            i_current: 15,
            split_counter: 0,
            interval_index: 0,
        };
        let mut p0_got_worse = false;
        for _ in 0..50 {
            let f_gbest_before = state.f_gbest;
            yi_step(&mut state, &params, &space, &obj, &mut budget, &mut rng).unwrap();
            assert!(state.f_gbest <= f_gbest_before);
            assert!(state.f_gbest <= state.f0);
            if state.f0 > f_gbest_before {
                p0_got_worse = true;
            }
        }
        // With a huge scope around a near-optimal start, the tracked point
        // must sometimes wander to worse fitness than the incumbent best.
        assert!(p0_got_worse);
        assert_eq!(state.split_counter, 50);
    }

    #[test]
    fn archive_reset_snaps_back_and_rejects_early_calls() {
        let mut state = YiState {
            p0: vec![5.0, 5.0],
            f0: 50.0,
            gbest: vec![1.0, 1.0],
            f_gbest: 2.0,
            eps: 1.0,
            i_current: 6,
            split_counter: 3,
            interval_index: 0,
        };
        assert!(archive_reset(&mut state).is_err());
        state.split_counter = 6;
        archive_reset(&mut state).unwrap();
        assert_eq!(state.p0, vec![1.0, 1.0]);
        assert_eq!(state.f0, 2.0);
        assert_eq!(state.split_counter, 0);
    }

    #[test]
    fn interval_advance_decays_scope_and_floors_period() {
        let params = YiParams::default();
        let mut state = YiState {
            p0: vec![0.0],
            f0: 0.0,
            gbest: vec![0.0],
            f_gbest: 0.0,
            eps: 10.0,
            i_current: 7,
            split_counter: 0,
            interval_index: 8,
        };
        interval_advance(&mut state, &params);
        assert_eq!(state.eps, 10.0 / 3.0);
        assert_eq!(state.i_current, 6);
        interval_advance(&mut state, &params);
        assert_eq!(state.i_current, 6);
        assert_eq!(state.interval_index, 10);
    }

    #[test]
    fn full_run_spends_exact_budget_and_stays_in_bounds() {
        let problem = sphere(5);
        let record = run_yi(
            &problem,
            problem.space(),
            &YiParams::default(),
            4_000,
            99,
            problem.id(),
        )
        .unwrap();
        assert_eq!(record.total_evals, 4_000);
        assert_eq!(record.algorithm, "yi");
        assert!(problem.space().contains(&record.final_best_point));
        for pair in record.trace.windows(2) {
            assert!(pair[0].best >= pair[1].best);
            assert!(pair[0].evals < pair[1].evals);
        }
        assert_eq!(record.trace.last().unwrap().evals, 4_000);
    }

    #[test]
    fn runs_are_seed_deterministic() {
        let problem = sphere(4);
        let params = YiParams::default();
        let a = run_yi(&problem, problem.space(), &params, 2_000, 7, "s").unwrap();
        let b = run_yi(&problem, problem.space(), &params, 2_000, 7, "s").unwrap();
        assert_eq!(a, b);
        let c = run_yi(&problem, problem.space(), &params, 2_000, 8, "s").unwrap();
        assert_ne!(a.final_best_point, c.final_best_point);
    }

    #[test]
    fn scope_decays_through_all_boundaries() {
        let problem = sphere(3);
        let params = YiParams::default();
        let mut run = YiRun::new(&problem, problem.space(), params.clone(), 5_000, 1, "s").unwrap();
        let eps0 = run.state().eps;
        while run.step() {}
        let state = run.state();
        assert_eq!(state.interval_index, params.interval_count() - 1);
        let expected =
            eps0 / params.sigma.powi(params.interval_count() as i32 - 1);
        let rel = (state.eps - expected).abs() / expected;
        assert!(rel < 1e-12, "eps {} vs {expected}", state.eps);
        assert_eq!(state.i_current, params.i_min);
    }

    #[test]
    fn degenerate_single_interval_never_decays() {
        let problem = sphere(3);
        let params = YiParams {
            i_min: 8,
            i_max: 8,
            ..YiParams::default()
        };
        let mut run = YiRun::new(&problem, problem.space(), params, 3_000, 2, "s").unwrap();
        while run.step() {}
        assert_eq!(run.state().eps, 3.0);
        assert_eq!(run.state().i_current, 8);
    }

    #[test]
    fn converges_on_small_sphere() {
        // 2D sphere with the default budget rule: nearly every seed should
        // get very close to the optimum.
        let problem = sphere(2);
        let mut hits = 0;
        for seed in 0..51 {
            let record = run_yi(
                &problem,
                problem.space(),
                &YiParams::default(),
                20_000,
                seed,
                problem.id(),
            )
            .unwrap();
            if record.final_best_fitness < 1e-3 {
                hits += 1;
            }
        }
        assert!(hits >= 45, "only {hits} of 51 seeds below 1e-3");
    }
}
