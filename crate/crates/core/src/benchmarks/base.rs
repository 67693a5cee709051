use crate::error::Error;
use serde::{Deserialize, Serialize};

/// Argument of the maximum of `x * sin(sqrt(x))` on `[0, 500]`: the root of
/// `2 sin(u) + u cos(u)` near `u = 20.5175` squared. This is where the
/// Schwefel function attains its minimum in every coordinate.
pub const SCHWEFEL_OPTIMUM: f64 = 420.96874635998205;

/// The twelve base test functions, each with minimum value 0 at a known
/// location. `z` is the already shifted/rotated argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFunction {
    /// `sum z_i^2`; minimum at the origin. Smooth, unimodal, separable.
    Sphere,
    /// `z_1^2 + 1e6 * sum_{i>=2} z_i^2`; minimum at the origin. One flat
    /// direction, badly conditioned.
    BentCigar,
    /// `sum z_i^2 + s^2 + s^4` with `s = sum 0.5 i z_i` (1-based `i`);
    /// minimum at the origin. Unimodal with a non-separable quartic ridge.
    Zakharov,
    /// `sum_{i<D} 100 (z_{i+1} - z_i^2)^2 + (z_i - 1)^2`; minimum at all
    /// ones. Curved narrow valley; needs at least 2 dimensions.
    Rosenbrock,
    /// `sum z_i^2 - 10 cos(2 pi z_i) + 10`; minimum at the origin. Highly
    /// multimodal with a regular grid of local minima.
    Rastrigin,
    /// `sin^2(pi w_1) + sum_{i<D} (w_i - 1)^2 (1 + 10 sin^2(pi w_i + 1)) +
    /// (w_D - 1)^2 (1 + sin^2(2 pi w_D))` with `w_i = 1 + (z_i - 1) / 4`;
    /// minimum at all ones.
    Levy,
    /// `(1/(D-1) * sum_{i<D} sqrt(s_i) (1 + sin^2(50 s_i^0.2)))^2` with
    /// `s_i = sqrt(z_i^2 + z_{i+1}^2)`; minimum at the origin. Needs at
    /// least 2 dimensions.
    SchafferF7,
    /// `-20 exp(-0.2 sqrt(mean z_i^2)) - exp(mean cos(2 pi z_i)) + 20 + e`;
    /// minimum at the origin. One deep funnel in a nearly flat plateau.
    Ackley,
    /// `sum z_i^2 / 4000 - prod cos(z_i / sqrt(i)) + 1` (1-based `i`);
    /// minimum at the origin.
    Griewank,
    /// `sum (c - z_i sin(sqrt(|z_i|)))` with `c` the per-coordinate value at
    /// the optimum, so the minimum is exactly 0 at `SCHWEFEL_OPTIMUM` in
    /// every coordinate. Domain `[-500, 500]`; the suite never shifts or
    /// rotates it because its optimum already sits far off-center and would
    /// leave the box.
    Schwefel,
    /// `sum (1e6)^((i-1)/(D-1)) z_i^2` (1-based `i`); minimum at the origin.
    /// Smoothly growing conditioning from 1 to 1e6; `D = 1` degenerates to
    /// `z^2`.
    Elliptic,
    /// `1e6 z_1^2 + sum_{i>=2} z_i^2`; minimum at the origin. The mirror
    /// image of the bent cigar.
    Discus,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 12] = [
        BaseFunction::Sphere,
        BaseFunction::BentCigar,
        BaseFunction::Zakharov,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Levy,
        BaseFunction::SchafferF7,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel,
        BaseFunction::Elliptic,
        BaseFunction::Discus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::BentCigar => "bent_cigar",
            BaseFunction::Zakharov => "zakharov",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Levy => "levy",
            BaseFunction::SchafferF7 => "schaffer_f7",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Schwefel => "schwefel",
            BaseFunction::Elliptic => "elliptic",
            BaseFunction::Discus => "discus",
        }
    }

    /// Smallest dimension the formula is defined for.
    pub fn min_dim(&self) -> usize {
        match self {
            BaseFunction::Rosenbrock | BaseFunction::SchafferF7 => 2,
            _ => 1,
        }
    }

    /// Symmetric default box half width.
    pub fn default_half_width(&self) -> f64 {
        match self {
            BaseFunction::Schwefel => 500.0,
            _ => 100.0,
        }
    }

    /// Whether the suite may compose this function with a rotation. False
    /// only for Schwefel, whose optimum would rotate out of the box.
    pub fn rotatable(&self) -> bool {
        !matches!(self, BaseFunction::Schwefel)
    }

    /// Whether the suite may shift this function. False only for Schwefel,
    /// whose surface dips below its in-box minimum once arguments exceed
    /// the original domain.
    pub fn shiftable(&self) -> bool {
        !matches!(self, BaseFunction::Schwefel)
    }

    /// Location of the minimum in `z` coordinates.
    pub fn min_location(&self, dim: usize) -> Vec<f64> {
        match self {
            BaseFunction::Rosenbrock | BaseFunction::Levy => vec![1.0; dim],
            BaseFunction::Schwefel => vec![SCHWEFEL_OPTIMUM; dim],
            _ => vec![0.0; dim],
        }
    }
}

impl std::str::FromStr for BaseFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        BaseFunction::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "base function",
                name: s.to_string(),
            })
    }
}

impl std::fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates a base function at `z`. Errors when `z` is shorter than the
/// function's minimum dimension.
pub fn evaluate_base(id: BaseFunction, z: &[f64]) -> Result<f64, Error> {
    if z.len() < id.min_dim() {
        return Err(Error::DimensionMismatch {
            expected: id.min_dim(),
            actual: z.len(),
        });
    }
    Ok(match id {
        BaseFunction::Sphere => z.iter().map(|v| v * v).sum(),
        BaseFunction::BentCigar => {
            z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>()
        }
        BaseFunction::Zakharov => {
            let quad: f64 = z.iter().map(|v| v * v).sum();
            let ridge: f64 = z
                .iter()
                .enumerate()
                .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
                .sum();
            quad + ridge.powi(2) + ridge.powi(4)
        }
        BaseFunction::Rosenbrock => z
            .windows(2)
            .map(|p| 100.0 * (p[1] - p[0] * p[0]).powi(2) + (p[0] - 1.0).powi(2))
            .sum(),
        BaseFunction::Rastrigin => z
            .iter()
            .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos() + 10.0)
            .sum(),
        BaseFunction::Levy => {
            let pi = std::f64::consts::PI;
            let w = |v: f64| 1.0 + (v - 1.0) / 4.0;
            let first = (pi * w(z[0])).sin().powi(2);
            let middle: f64 = z[..z.len() - 1]
                .iter()
                .map(|&v| {
                    let wi = w(v);
                    (wi - 1.0).powi(2) * (1.0 + 10.0 * (pi * wi + 1.0).sin().powi(2))
                })
                .sum();
            let wd = w(z[z.len() - 1]);
            let last = (wd - 1.0).powi(2) * (1.0 + (2.0 * pi * wd).sin().powi(2));
            first + middle + last
        }
        BaseFunction::SchafferF7 => {
            let d = z.len();
            let mean: f64 = z
                .windows(2)
                .map(|p| {
                    let s = (p[0] * p[0] + p[1] * p[1]).sqrt();
                    s.sqrt() * (1.0 + (50.0 * s.powf(0.2)).sin().powi(2))
                })
                .sum::<f64>()
                / (d - 1) as f64;
            mean * mean
        }
        BaseFunction::Ackley => {
            let d = z.len() as f64;
            let quad: f64 = z.iter().map(|v| v * v).sum();
            let trig: f64 = z
                .iter()
                .map(|v| (2.0 * std::f64::consts::PI * v).cos())
                .sum();
            -20.0 * (-0.2 * (quad / d).sqrt()).exp() - (trig / d).exp()
                + 20.0
                + std::f64::consts::E
        }
        BaseFunction::Griewank => {
            let quad: f64 = z.iter().map(|v| v * v).sum();
            let prod: f64 = z
                .iter()
                .enumerate()
                .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                .product();
            quad / 4000.0 - prod + 1.0
        }
        BaseFunction::Schwefel => {
            // Computing the offset with the same expression as the terms
            // makes the residual at the optimum cancel exactly.
            let x = SCHWEFEL_OPTIMUM;
            let offset = x * x.sqrt().sin();
            z.iter()
                .map(|&v| offset - v * v.abs().sqrt().sin())
                .sum()
        }
        BaseFunction::Elliptic => {
            let d = z.len();
            if d == 1 {
                z[0] * z[0]
            } else {
                z.iter()
                    .enumerate()
                    .map(|(i, v)| 1e6f64.powf(i as f64 / (d - 1) as f64) * v * v)
                    .sum()
            }
        }
        BaseFunction::Discus => {
            1e6 * z[0] * z[0] + z[1..].iter().map(|v| v * v).sum::<f64>()
        }
    })
}
