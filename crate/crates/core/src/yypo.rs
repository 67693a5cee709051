use crate::error::Error;
use crate::eval::{evaluate_counted, BudgetExhausted, EvalBudget, Objective};
use crate::record::{RunRecord, RunRecorder};
use crate::rng::RngStream;
use crate::schedule::equal_interval_boundaries;
use crate::space::{repair_in_place, SearchSpace};
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

/// How the archive period is chosen after each archive stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YypoVariant {
    /// Classic rule: a fresh uniform period from `[i_min, i_max]` after
    /// every archive stage.
    StaticRandomI,
    /// Refined rule: the period climbs from `i_min` to `i_max` across an
    /// equal evaluation-count schedule, lengthening the exploitation
    /// cycles toward the end of the run.
    DynamicAscendingI,
}

/// Tunables of the Yin-Yang pair optimizer.
///
/// Two points split in normalized unit-cube coordinates: the fitter one
/// with a contracting radius for exploitation, the other with an expanding
/// radius for exploration. Visited points accumulate in an archive that is
/// folded back into the pair every `i_current` updates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YypoParams {
    /// Smallest archive period.
    pub i_min: usize,
    /// Largest archive period.
    pub i_max: usize,
    /// Expansion/contraction factor for the radii; must exceed 1 or the
    /// contracting radius would become non-positive in one stage.
    pub alpha_ec: f64,
    pub variant: YypoVariant,
}

impl Default for YypoParams {
    fn default() -> Self {
        YypoParams {
            i_min: 6,
            i_max: 15,
            alpha_ec: 5.0,
            variant: YypoVariant::StaticRandomI,
        }
    }
}

impl YypoParams {
    /// Defaults with the ascending-period schedule.
    pub fn dynamic() -> Self {
        YypoParams {
            variant: YypoVariant::DynamicAscendingI,
            ..YypoParams::default()
        }
    }

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
        if !(self.alpha_ec > 1.0 && self.alpha_ec.is_finite()) {
            return Err(Error::param(
                "alpha_ec",
                format!("must be finite and > 1, got {}", self.alpha_ec),
            ));
        }
        Ok(())
    }

    /// Number of schedule intervals for the ascending variant: one per
    /// period value from `i_min` up to `i_max`, plus a final interval at
    /// the ceiling, exactly mirroring [`crate::yi::YiParams::interval_count`]
    /// so both schedules share their boundary geometry.
    pub fn interval_count(&self) -> usize {
        if self.i_max == self.i_min {
            1
        } else {
            self.i_max - self.i_min + 2
        }
    }

    /// Archive period for the ascending schedule after `interval_index`
    /// boundary crossings: climbs one per crossing, capped at `i_max`.
    pub fn ascending_period(&self, interval_index: usize) -> usize {
        (self.i_min + interval_index).min(self.i_max)
    }

    /// Conventional name of the configured variant.
    pub fn algorithm_name(&self) -> &'static str {
        match self.variant {
            YypoVariant::StaticRandomI => "yypo",
            YypoVariant::DynamicAscendingI => "dyypo",
        }
    }
}

/// Probability of choosing the all-coordinates split over the
/// one-coordinate split for a `d`-dimensional problem: `(d / (d + 5))^2`.
pub fn p_dway(d: usize) -> f64 {
    assert!(d >= 1, "dimension must be positive");
    let d = d as f64;
    (d / (d + 5.0)).powi(2)
}

/// Mutable state of one pair run. Points live in unit-cube coordinates
/// and are mapped onto the search box only for evaluation.
#[derive(Debug, Clone)]
pub struct YypoState {
    /// Exploitation point; the fitter of the pair at every update start.
    pub p1: Vec<f64>,
    /// Exploration point.
    pub p2: Vec<f64>,
    /// Fitness of `p1`.
    pub f1: f64,
    /// Fitness of `p2`.
    pub f2: f64,
    /// Search radius of `p1`; contracts at archive stages.
    pub delta1: f64,
    /// Search radius of `p2`; expands at archive stages.
    pub delta2: f64,
    /// Points the pair occupied at update starts since the last archive
    /// stage, with their fitness, so the archive never re-evaluates.
    pub archive: Vec<(Vec<f64>, f64)>,
    /// Updates until the next archive stage.
    pub i_current: usize,
    /// Updates done since the last archive stage.
    pub split_counter: usize,
    /// Schedule boundaries already crossed (ascending variant only).
    pub interval_index: usize,
}

/// Evaluation counts at which the ascending-period schedule steps up: the
/// interior boundaries of `interval_count` equal spans of `t_max`.
pub fn interval_boundaries(t_max: u64, params: &YypoParams) -> Result<Vec<u64>, Error> {
    params.validate()?;
    equal_interval_boundaries(t_max, params.interval_count())
}

fn eval_unit<O: Objective + ?Sized>(
    unit_point: &[f64],
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
) -> Result<f64, BudgetExhausted> {
    let x = space.denormalize(unit_point);
    evaluate_counted(obj, &x, budget)
}

/// One-coordinate split: for each coordinate `j`, a forward candidate
/// `p + r_j * delta * e_j` and a backward one `p - r_j * delta * e_j`,
/// with a fresh `r_j` uniform in `[0, 1)` shared by the pair.
///
/// Candidates come out forward block first, then the backward block, each
/// repaired into the unit cube and evaluated on the denormalized point.
/// Consumes one step draw per coordinate (the backward block reuses them)
/// plus one draw per repaired coordinate. Runs out of budget mid-split by
/// returning the candidates evaluated so far.
pub fn one_way_split<O: Objective + ?Sized>(
    p: &[f64],
    delta: f64,
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
    rng: &mut RngStream,
) -> Vec<(Vec<f64>, f64)> {
    let dim = space.dim();
    assert_eq!(p.len(), dim, "point dimension mismatch");
    let unit = SearchSpace::unit(dim).expect("dimension is positive");
    let mut out = Vec::with_capacity(2 * dim);
    let mut steps = vec![0.0; dim];
    for j in 0..dim {
        if budget.is_exhausted() {
            return out;
        }
        steps[j] = rng.next_uniform();
        let mut candidate = p.to_vec();
        candidate[j] += steps[j] * delta;
        repair_in_place(&mut candidate, &unit, rng);
        let fitness =
            eval_unit(&candidate, space, obj, budget).expect("budget checked before the draw");
        out.push((candidate, fitness));
    }
    for j in 0..dim {
        if budget.is_exhausted() {
            return out;
        }
        let mut candidate = p.to_vec();
        candidate[j] -= steps[j] * delta;
        repair_in_place(&mut candidate, &unit, rng);
        let fitness =
            eval_unit(&candidate, space, obj, budget).expect("budget checked before the draw");
        out.push((candidate, fitness));
    }
    out
}

/// All-coordinates split: `2 * dim` candidates `p + r * delta / sqrt(2)`
/// with `r` drawn elementwise uniform in `[-1, 1)`, fresh per candidate,
/// so every candidate stays within the max-norm ball of radius
/// `delta / sqrt(2)` before repair.
///
/// Consumes `dim` step draws per candidate plus one per repaired
/// coordinate; truncates like [`one_way_split`] when the budget runs out.
pub fn d_way_split<O: Objective + ?Sized>(
    p: &[f64],
    delta: f64,
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
    rng: &mut RngStream,
) -> Vec<(Vec<f64>, f64)> {
    let dim = space.dim();
    assert_eq!(p.len(), dim, "point dimension mismatch");
    let unit = SearchSpace::unit(dim).expect("dimension is positive");
    let scale = delta / SQRT_2;
    let mut out = Vec::with_capacity(2 * dim);
    for _ in 0..2 * dim {
        if budget.is_exhausted() {
            return out;
        }
        let mut candidate = p.to_vec();
        for slot in candidate.iter_mut() {
            *slot += (2.0 * rng.next_uniform() - 1.0) * scale;
        }
        repair_in_place(&mut candidate, &unit, rng);
        let fitness =
            eval_unit(&candidate, space, obj, budget).expect("budget checked before the draw");
        out.push((candidate, fitness));
    }
    out
}

fn best_candidate(candidates: Vec<(Vec<f64>, f64)>) -> Option<(Vec<f64>, f64)> {
    candidates
        .into_iter()
        .reduce(|best, next| if next.1 < best.1 { next } else { best })
}

/// One pair update: archives both current points, splits each around its
/// own radius (choosing the all-coordinates strategy with probability
/// [`p_dway`]), replaces each point by the best of its own candidates,
/// and finally swaps points together with their radii if the second ended
/// up fitter.
///
/// A full update costs `4 * dim` evaluations; when the budget dies
/// mid-update the update truncates, keeping whatever was evaluated.
/// The error is returned only when nothing at all could be evaluated.
pub fn split_stage<O: Objective + ?Sized>(
    state: &mut YypoState,
    space: &SearchSpace,
    obj: &O,
    budget: &mut EvalBudget,
    rng: &mut RngStream,
) -> Result<(), BudgetExhausted> {
    if budget.is_exhausted() {
        return Err(BudgetExhausted);
    }
    let dway_probability = p_dway(space.dim());
    state.archive.push((state.p1.clone(), state.f1));
    state.archive.push((state.p2.clone(), state.f2));
    let mut evaluated_any = false;

    let candidates = if rng.next_uniform() < dway_probability {
        d_way_split(&state.p1, state.delta1, space, obj, budget, rng)
    } else {
        one_way_split(&state.p1, state.delta1, space, obj, budget, rng)
    };
    if let Some((point, fitness)) = best_candidate(candidates) {
        state.p1 = point;
        state.f1 = fitness;
        evaluated_any = true;
    }

    if !budget.is_exhausted() {
        let candidates = if rng.next_uniform() < dway_probability {
            d_way_split(&state.p2, state.delta2, space, obj, budget, rng)
        } else {
            one_way_split(&state.p2, state.delta2, space, obj, budget, rng)
        };
        if let Some((point, fitness)) = best_candidate(candidates) {
            state.p2 = point;
            state.f2 = fitness;
            evaluated_any = true;
        }
    }

    if state.f2 < state.f1 {
        std::mem::swap(&mut state.p1, &mut state.p2);
        std::mem::swap(&mut state.f1, &mut state.f2);
        std::mem::swap(&mut state.delta1, &mut state.delta2);
    }
    state.split_counter += 1;
    if evaluated_any {
        Ok(())
    } else {
        Err(BudgetExhausted)
    }
}

/// Radius update applied at every archive stage: the exploitation radius
/// contracts to `delta1 * (1 - 1/alpha)`, the exploration radius expands
/// to `delta2 * (1 + 1/alpha)`. Both stay positive because `alpha > 1`.
pub fn radius_update(state: &mut YypoState, params: &YypoParams) {
    state.delta1 *= 1.0 - 1.0 / params.alpha_ec;
    state.delta2 *= 1.0 + 1.0 / params.alpha_ec;
}

/// Archive stage, due once `split_counter` has reached `i_current`;
/// calling early is an error.
///
/// The fittest archived point replaces `p1` when strictly fitter (fitness
/// was stored at archive time, so nothing is re-evaluated), the radii
/// update, the archive empties, and the next period is drawn uniformly
/// from `[i_min, i_max]` or taken from the ascending schedule depending
/// on the variant.
pub fn archive_stage(
    state: &mut YypoState,
    params: &YypoParams,
    rng: &mut RngStream,
) -> Result<(), Error> {
    if state.split_counter < state.i_current {
        return Err(Error::OutOfOrder(format!(
            "archive stage after {} of {} updates",
            state.split_counter, state.i_current
        )));
    }
    let mut best: Option<usize> = None;
    for (i, (_, fitness)) in state.archive.iter().enumerate() {
        if best.is_none_or(|b| *fitness < state.archive[b].1) {
            best = Some(i);
        }
    }
    if let Some(i) = best {
        if state.archive[i].1 < state.f1 {
            state.f1 = state.archive[i].1;
            state.p1.clone_from(&state.archive[i].0);
        }
    }
    radius_update(state, params);
    state.archive.clear();
    state.split_counter = 0;
    state.i_current = match params.variant {
        YypoVariant::StaticRandomI => rng.uniform_int_inclusive(params.i_min, params.i_max),
        YypoVariant::DynamicAscendingI => params.ascending_period(state.interval_index),
    };
    Ok(())
}

/// Driver for one pair run with step-level access for instrumentation.
#[derive(Debug)]
pub struct YypoRun<'a, O: Objective + ?Sized> {
    params: YypoParams,
    space: &'a SearchSpace,
    obj: &'a O,
    budget: EvalBudget,
    rng: RngStream,
    state: YypoState,
    boundaries: Vec<u64>,
    recorder: RunRecorder,
}

impl<'a, O: Objective + ?Sized> YypoRun<'a, O> {
    /// Sets up the run and spends up to two evaluations on the initial
    /// pair, ordering it fitter-first.
    pub fn new(
        obj: &'a O,
        space: &'a SearchSpace,
        params: YypoParams,
        t_max: u64,
        seed: u64,
        problem_label: &str,
    ) -> Result<Self, Error> {
        params.validate()?;
        let boundaries = match params.variant {
            YypoVariant::StaticRandomI => Vec::new(),
            YypoVariant::DynamicAscendingI => interval_boundaries(t_max, &params)?,
        };
        let mut budget = EvalBudget::new(t_max)?;
        let mut rng = RngStream::new(seed);
        let mut recorder = RunRecorder::new(seed, params.algorithm_name(), problem_label);
        let unit = SearchSpace::unit(space.dim())?;

        let mut p1 = unit.sample_uniform(&mut rng);
        let mut f1 = eval_unit(&p1, space, obj, &mut budget).expect("budget is at least 1");
        recorder.observe(budget.used(), &space.denormalize(&p1), f1);
        let mut p2 = unit.sample_uniform(&mut rng);
        // A one-evaluation budget leaves the second point unevaluated; it
        // then never wins a comparison and the run ends immediately.
        let mut f2 = match eval_unit(&p2, space, obj, &mut budget) {
            Ok(f) => {
                recorder.observe(budget.used(), &space.denormalize(&p2), f);
                f
            }
            Err(BudgetExhausted) => f64::INFINITY,
        };
        if f2 < f1 {
            std::mem::swap(&mut p1, &mut p2);
            std::mem::swap(&mut f1, &mut f2);
        }
        let i_current = match params.variant {
            YypoVariant::StaticRandomI => {
                rng.uniform_int_inclusive(params.i_min, params.i_max)
            }
            YypoVariant::DynamicAscendingI => params.i_min,
        };
        let state = YypoState {
            p1,
            p2,
            f1,
            f2,
            delta1: 0.5,
            delta2: 0.5,
            archive: Vec::new(),
            i_current,
            split_counter: 0,
            interval_index: 0,
        };
        Ok(YypoRun {
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

    pub fn state(&self) -> &YypoState {
        &self.state
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    pub fn boundaries(&self) -> &[u64] {
        &self.boundaries
    }

    /// Runs one update (plus any due archive stage and schedule
    /// transitions). Returns false once the budget is exhausted.
    pub fn step(&mut self) -> bool {
        if self.budget.is_exhausted() {
            return false;
        }
        // Boundaries are crossed by cumulative evaluation count; several
        // may be due at once. Static runs have no boundaries.
        while self.state.interval_index < self.boundaries.len()
            && self.budget.used() >= self.boundaries[self.state.interval_index]
        {
            self.state.interval_index += 1;
            self.recorder.mark(self.budget.used());
        }
        if self.state.split_counter >= self.state.i_current {
            archive_stage(&mut self.state, &self.params, &mut self.rng)
                .expect("stage due by the check above");
        }
        match split_stage(
            &mut self.state,
            self.space,
            self.obj,
            &mut self.budget,
            &mut self.rng,
        ) {
            Ok(()) => {
                self.recorder.observe(
                    self.budget.used(),
                    &self.space.denormalize(&self.state.p1),
                    self.state.f1,
                );
                self.recorder.observe(
                    self.budget.used(),
                    &self.space.denormalize(&self.state.p2),
                    self.state.f2,
                );
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

/// Runs the pair optimizer (either variant) to budget exhaustion.
pub fn run_yypo<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    params: &YypoParams,
    t_max: u64,
    seed: u64,
    problem_label: &str,
) -> Result<RunRecord, Error> {
    Ok(YypoRun::new(obj, space, params.clone(), t_max, seed, problem_label)?.finish())
}
