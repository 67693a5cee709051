//! Seeded benchmark landscapes: twelve base functions, shift/rotation
//! instancing, a small composition builder, and manifest-backed suites.

mod base;
mod composition;
mod problem;
mod rotation;
mod suite;

pub use base::{evaluate_base, BaseFunction, SCHWEFEL_OPTIMUM};
pub use composition::{CompositionComponent, CompositionProblem};
pub use problem::{error_value, evaluate_problem, BenchmarkProblem};
pub use rotation::{random_orthogonal, SquareMatrix};
pub use suite::{
    desk_suite, manifest_from_str, manifest_to_string, smoke_suite, ProblemSpec, SuiteFunction,
    SuiteProblem,
};
