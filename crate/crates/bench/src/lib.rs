//! Shared helpers for the kernel benchmarks.

use yiopt_core::SearchSpace;

/// The usual cheap benchmark objective.
pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Standard symmetric box at the given dimension.
pub fn standard_space(dim: usize) -> SearchSpace {
    SearchSpace::symmetric(dim, 100.0).expect("valid box")
}
