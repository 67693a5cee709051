//! Single-objective black-box optimization on box-bounded continuous
//! domains.
//!
//! The centerpiece is a single-point optimizer that explores with
//! heavy-tailed "flight" steps whose scope decays on an evaluation-count
//! schedule ([`yi`]), alongside the two-point Yin-Yang pair family it
//! descends from ([`yypo`]) and classic DE/PSO baselines ([`de`],
//! [`pso`]). Supporting modules provide seeded benchmark problems with
//! shift/rotation/bias transforms ([`benchmarks`]), exact evaluation
//! budgeting ([`eval`]), deterministic counted RNG streams ([`rng`]),
//! convergence recording ([`record`]), and Welch-t win/tie/loss
//! comparison statistics ([`stats`]).
//!
//! Every run is a pure function of (algorithm parameters, problem, seed,
//! budget): identical inputs give identical `RunRecord`s, bit for bit.

pub mod algorithm;
pub mod benchmarks;
pub mod de;
pub mod error;
pub mod eval;
pub mod pso;
pub mod record;
pub mod rng;
pub mod schedule;
pub mod space;
pub mod stable;
pub mod stats;
pub mod yi;
pub mod yypo;

pub use algorithm::{AlgorithmConfig, AlgorithmId};
pub use de::{run_de, DeParams, DeRun};
pub use error::Error;
pub use eval::{evaluate_counted, BudgetExhausted, EvalBudget, Objective};
pub use pso::{run_pso, PsoParams, PsoRun, PsoSwarm};
pub use record::{RunRecord, RunRecorder, TracePoint};
pub use rng::{derive_seed, RngStream};
pub use schedule::equal_interval_boundaries;
pub use space::{repair_in_place, resample_out_of_bounds, SearchSpace};
pub use stable::{sample_stable, sample_stable_vector, stable_from_uniforms, StableParams};
pub use yi::{run_yi, ScopePolicy, YiParams, YiRun, YiState};
pub use yypo::{run_yypo, YypoParams, YypoRun, YypoState, YypoVariant};
