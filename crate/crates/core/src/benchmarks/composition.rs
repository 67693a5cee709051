use crate::benchmarks::base::{evaluate_base, BaseFunction};
use crate::benchmarks::rotation::SquareMatrix;
use crate::error::Error;
use crate::eval::Objective;
use crate::space::SearchSpace;

/// One ingredient of a composition: a rotated, shifted base landscape with
/// its own weighting width, scale, and value offset.
#[derive(Debug, Clone)]
pub struct CompositionComponent {
    pub base: BaseFunction,
    pub shift: Vec<f64>,
    pub rotation: Option<SquareMatrix>,
    /// Gaussian weighting width controlling this component's basin size.
    pub sigma: f64,
    /// Multiplier applied to the raw base value.
    pub lambda: f64,
    /// Value offset added on top of the scaled base value.
    pub offset: f64,
}

/// Distance-weighted blend of several base landscapes.
///
/// `f(x) = sum_k w_k(x) (lambda_k base_k(M_k (x - o_k)) + offset_k) + bias`
/// where the normalized weights `w_k` favor the component whose shift `o_k`
/// is nearest: `w_k ~ exp(-d_k^2 / (2 D sigma_k^2)) / d_k` with `d_k` the
/// distance to `o_k`. Exactly at `o_k` the blend collapses to component `k`
/// alone.
///
/// With every component base minimal at the origin, component offsets
/// nonnegative and exactly one offset equal to zero, the global minimum is
/// exactly `bias`, attained at that component's shift. This mirrors the
/// shape of composition functions in rotated-benchmark test suites but is a
/// deliberately small stand-in, not a reimplementation of any official one.
#[derive(Debug, Clone)]
pub struct CompositionProblem {
    id: String,
    components: Vec<CompositionComponent>,
    bias: f64,
    space: SearchSpace,
}

impl CompositionProblem {
    pub fn new(
        id: impl Into<String>,
        components: Vec<CompositionComponent>,
        bias: f64,
        space: SearchSpace,
    ) -> Result<Self, Error> {
        if components.len() < 2 {
            return Err(Error::param("components", "need at least 2"));
        }
        let dim = space.dim();
        let mut zero_offsets = 0;
        for c in &components {
            if c.shift.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: c.shift.len(),
                });
            }
            if let Some(m) = &c.rotation {
                if m.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        actual: m.dim(),
                    });
                }
            }
            if c.base.min_location(dim).iter().any(|&v| v != 0.0) {
                return Err(Error::param(
                    "components",
                    format!("{} does not have its minimum at the origin", c.base),
                ));
            }
            if !(c.sigma > 0.0 && c.lambda > 0.0 && c.offset >= 0.0) {
                return Err(Error::param(
                    "components",
                    "sigma and lambda must be positive, offset nonnegative",
                ));
            }
            if !space.contains(&c.shift) {
                return Err(Error::param("components", "shift outside the box"));
            }
            if c.offset == 0.0 {
                zero_offsets += 1;
            }
        }
        if zero_offsets != 1 {
            return Err(Error::param(
                "components",
                "exactly one component must have offset 0 to pin the minimum",
            ));
        }
        if !bias.is_finite() {
            return Err(Error::param("bias", "must be finite"));
        }
        Ok(CompositionProblem {
            id: id.into(),
            components,
            bias,
            space,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    /// Shift of the zero-offset component, where the minimum `bias` sits.
    pub fn known_optimum(&self) -> Vec<f64> {
        self.components
            .iter()
            .find(|c| c.offset == 0.0)
            .expect("validated at construction")
            .shift
            .clone()
    }

    fn component_value(&self, k: usize, x: &[f64]) -> f64 {
        let c = &self.components[k];
        let centered: Vec<f64> = x.iter().zip(&c.shift).map(|(v, o)| v - o).collect();
        let z = match &c.rotation {
            Some(m) => m.mul_vec(&centered),
            None => centered,
        };
        c.lambda * evaluate_base(c.base, &z).expect("dimension checked") + c.offset
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.space.dim(), "evaluate dimension mismatch");
        let dim = self.space.dim() as f64;
        let mut weights = Vec::with_capacity(self.components.len());
        for (k, c) in self.components.iter().enumerate() {
            let d2: f64 = x
                .iter()
                .zip(&c.shift)
                .map(|(v, o)| (v - o) * (v - o))
                .sum();
            if d2 == 0.0 {
                // Exactly on a component shift the blend is that component.
                return self.component_value(k, x) + self.bias;
            }
            weights.push((-d2 / (2.0 * dim * c.sigma * c.sigma)).exp() / d2.sqrt());
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            // All weights underflowed; fall back to an even blend.
            let n = self.components.len() as f64;
            let value: f64 = (0..self.components.len())
                .map(|k| self.component_value(k, x))
                .sum();
            return value / n + self.bias;
        }
        let mut value = 0.0;
        for (k, w) in weights.iter().enumerate() {
            value += (w / total) * self.component_value(k, x);
        }
        value + self.bias
    }

    pub fn error_value(&self, x: &[f64]) -> f64 {
        self.evaluate(x) - self.bias
    }
}

impl Objective for CompositionProblem {
    fn eval(&self, x: &[f64]) -> f64 {
        self.evaluate(x)
    }
}
