use crate::benchmarks::base::{evaluate_base, BaseFunction};
use crate::benchmarks::rotation::SquareMatrix;
use crate::error::Error;
use crate::eval::Objective;
use crate::space::SearchSpace;

/// A shifted, optionally rotated, biased instance of a base function:
/// `f(x) = base(M (x - shift)) + bias`, minimized over `space`.
///
/// The global minimum value is exactly `bias`, attained at
/// `shift + M^T z*` where `z*` is the base function's optimum.
#[derive(Debug, Clone)]
pub struct BenchmarkProblem {
    id: String,
    base: BaseFunction,
    shift: Vec<f64>,
    rotation: Option<SquareMatrix>,
    bias: f64,
    space: SearchSpace,
}

impl BenchmarkProblem {
    /// Builds an instance, checking that all dimensions agree, the rotation
    /// is orthogonal to within 1e-9, and the optimum lies inside the box.
    pub fn new(
        id: impl Into<String>,
        base: BaseFunction,
        shift: Vec<f64>,
        rotation: Option<SquareMatrix>,
        bias: f64,
        space: SearchSpace,
    ) -> Result<Self, Error> {
        let dim = space.dim();
        if dim < base.min_dim() {
            return Err(Error::DimensionMismatch {
                expected: base.min_dim(),
                actual: dim,
            });
        }
        if shift.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: shift.len(),
            });
        }
        if let Some(m) = &rotation {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: m.dim(),
                });
            }
            let defect = m.orthogonality_defect();
            if defect > 1e-9 {
                return Err(Error::param(
                    "rotation",
                    format!("not orthogonal, defect {defect:e}"),
                ));
            }
            if !base.rotatable() {
                return Err(Error::param(
                    "rotation",
                    format!("{base} cannot be rotated"),
                ));
            }
        }
        if !bias.is_finite() {
            return Err(Error::param("bias", "must be finite"));
        }
        let problem = BenchmarkProblem {
            id: id.into(),
            base,
            shift,
            rotation,
            bias,
            space,
        };
        let opt = problem.known_optimum();
        if !problem.space.contains(&opt) {
            return Err(Error::param(
                "shift",
                format!("optimum {opt:?} falls outside the box"),
            ));
        }
        Ok(problem)
    }

    /// Plain instance: no shift, no rotation, zero bias, default box.
    pub fn plain(base: BaseFunction, dim: usize) -> Result<Self, Error> {
        let space = SearchSpace::symmetric(dim, base.default_half_width())?;
        let shift = vec![0.0; dim];
        // The plain Schwefel optimum is off-center but inside its box, so
        // zero shift is valid for every base function.
        BenchmarkProblem::new(format!("{base}_{dim}"), base, shift, None, 0.0, space)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn base(&self) -> BaseFunction {
        self.base
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn rotation(&self) -> Option<&SquareMatrix> {
        self.rotation.as_ref()
    }

    /// Location of the global minimum in original coordinates.
    pub fn known_optimum(&self) -> Vec<f64> {
        let z_star = self.base.min_location(self.space.dim());
        let moved = match &self.rotation {
            Some(m) => m.transpose_mul_vec(&z_star),
            None => z_star,
        };
        moved
            .iter()
            .zip(&self.shift)
            .map(|(v, o)| v + o)
            .collect()
    }

    /// `base(M (x - shift)) + bias`. Panics on wrong dimension; use
    /// [`evaluate_problem`] for a checked entry point.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.space.dim(), "evaluate dimension mismatch");
        let centered: Vec<f64> = x.iter().zip(&self.shift).map(|(v, o)| v - o).collect();
        let z = match &self.rotation {
            Some(m) => m.mul_vec(&centered),
            None => centered,
        };
        evaluate_base(self.base, &z).expect("dimension checked at construction") + self.bias
    }
}

impl Objective for BenchmarkProblem {
    fn eval(&self, x: &[f64]) -> f64 {
        self.evaluate(x)
    }
}

/// Checked evaluation of a benchmark problem.
pub fn evaluate_problem(problem: &BenchmarkProblem, x: &[f64]) -> Result<f64, Error> {
    if x.len() != problem.space().dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.space().dim(),
            actual: x.len(),
        });
    }
    Ok(problem.evaluate(x))
}

/// Distance of an achieved objective value from the problem's global
/// minimum: `f(x) - bias`. Nonnegative up to floating-point residue.
pub fn error_value(problem: &BenchmarkProblem, x: &[f64]) -> f64 {
    problem.evaluate(x) - problem.bias()
}
