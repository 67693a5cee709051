use serde::{Deserialize, Serialize};

/// Best-so-far fitness at a given evaluation count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evals: u64,
    pub best: f64,
}

/// Everything needed to report or replay one optimization run.
///
/// The trace is compacted: a point is stored only when the best-so-far
/// fitness improves, at schedule checkpoints, and once at the end, so memory
/// stays far below one entry per evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub algorithm: String,
    pub problem: String,
    pub trace: Vec<TracePoint>,
    pub final_best_point: Vec<f64>,
    pub final_best_fitness: f64,
    pub total_evals: u64,
}

impl RunRecord {
    /// Best-so-far fitness after `evals` evaluations, by step lookup on the
    /// compacted trace. Returns None before the first recorded point.
    pub fn best_at(&self, evals: u64) -> Option<f64> {
        let mut best = None;
        for point in &self.trace {
            if point.evals <= evals {
                best = Some(point.best);
            } else {
                break;
            }
        }
        best
    }
}

/// Accumulates the best-ever point and the compacted trace during a run.
///
/// Optimizers report every evaluated candidate here right after charging the
/// budget; the recorder keeps the strict minimum seen so far, independent of
/// which points the algorithm itself decides to keep.
#[derive(Debug, Clone)]
pub struct RunRecorder {
    seed: u64,
    algorithm: String,
    problem: String,
    best_point: Vec<f64>,
    best_fitness: f64,
    trace: Vec<TracePoint>,
}

impl RunRecorder {
    pub fn new(seed: u64, algorithm: &str, problem: &str) -> Self {
        RunRecorder {
            seed,
            algorithm: algorithm.to_string(),
            problem: problem.to_string(),
            best_point: Vec::new(),
            best_fitness: f64::INFINITY,
            trace: Vec::new(),
        }
    }

    /// Reports a candidate evaluated as the `evals`-th objective call.
    /// Updates the incumbent on strict improvement only.
    pub fn observe(&mut self, evals: u64, x: &[f64], fitness: f64) {
        if fitness < self.best_fitness || self.best_point.is_empty() {
            self.best_fitness = fitness;
            self.best_point.clear();
            self.best_point.extend_from_slice(x);
            self.push(evals);
        }
    }

    /// Forces a trace checkpoint at `evals` without changing the incumbent.
    pub fn mark(&mut self, evals: u64) {
        if !self.best_point.is_empty() {
            self.push(evals);
        }
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn best_point(&self) -> &[f64] {
        &self.best_point
    }

    /// Seals the run after `total_evals` evaluations.
    pub fn finish(mut self, total_evals: u64) -> RunRecord {
        self.mark(total_evals);
        RunRecord {
            seed: self.seed,
            algorithm: self.algorithm,
            problem: self.problem,
            trace: self.trace,
            final_best_point: self.best_point,
            final_best_fitness: self.best_fitness,
            total_evals,
        }
    }

    fn push(&mut self, evals: u64) {
        match self.trace.last_mut() {
            Some(last) if last.evals == evals => last.best = self.best_fitness,
            _ => self.trace.push(TracePoint {
                evals,
                best: self.best_fitness,
            }),
        }
    }
}
