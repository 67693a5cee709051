//! Library behind the `yiopt` binary: experiment configuration, a
//! resumable parallel runner, result persistence, and report generation
//! (comparison tables, convergence traces, parameter sweeps).

pub mod config;
pub mod persist;
pub mod runner;
pub mod sweep;
pub mod tables;
pub mod traces;

pub use config::{spec_from_yi, AlgorithmSpec, ExperimentConfig};
pub use persist::{load_record, record_path, save_record, try_load_record};
pub use runner::{
    load_results, load_results_on, run_experiment, run_experiment_on, run_seed, ProblemInfo,
    ResultSet,
};
pub use sweep::{run_sweep, write_sweep_report, SweepParameter, SweepReport, SweepSpec};
pub use tables::{comparison_table, write_summary};
pub use traces::{export_traces, trace_grid, Abscissa};
