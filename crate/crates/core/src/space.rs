use crate::error::Error;
use crate::rng::RngStream;

/// Axis-aligned box of feasible points.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    /// Builds a box from per-coordinate bounds.
    ///
    /// Requires equal lengths, at least one dimension, finite values and
    /// strictly `lower[j] < upper[j]` everywhere.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, Error> {
        if lower.len() != upper.len() {
            return Err(Error::InvalidBounds(format!(
                "lower has {} coordinates, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        if lower.is_empty() {
            return Err(Error::InvalidBounds("dimension must be at least 1".into()));
        }
        for (j, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidBounds(format!(
                    "non-finite bound in coordinate {j}"
                )));
            }
            if lo >= hi {
                return Err(Error::InvalidBounds(format!(
                    "coordinate {j} has lower {lo} >= upper {hi}"
                )));
            }
        }
        Ok(SearchSpace { lower, upper })
    }

    /// The box `[-half_width, half_width]^dim`.
    pub fn symmetric(dim: usize, half_width: f64) -> Result<Self, Error> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidBounds(format!(
                "half width must be positive and finite, got {half_width}"
            )));
        }
        SearchSpace::new(vec![-half_width; dim], vec![half_width; dim])
    }

    /// The unit box `[0, 1]^dim`.
    pub fn unit(dim: usize) -> Result<Self, Error> {
        SearchSpace::new(vec![0.0; dim], vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Whether every coordinate lies inside its closed interval.
    /// NaN coordinates count as outside.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((&v, &lo), &hi)| v >= lo && v <= hi)
    }

    /// Uniform point in the box, consuming exactly `dim` draws.
    pub fn sample_uniform(&self, rng: &mut RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
            .collect()
    }

    /// Maps a unit-cube point onto this box, coordinate-wise affine.
    pub fn denormalize(&self, unit: &[f64]) -> Vec<f64> {
        assert_eq!(unit.len(), self.dim(), "dimension mismatch");
        unit.iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .map(|((&u, &lo), &hi)| lo + u * (hi - lo))
            .collect()
    }

    /// Arithmetic mean of the per-coordinate half widths.
    pub fn mean_half_width(&self) -> f64 {
        let total: f64 = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| (hi - lo) / 2.0)
            .sum();
        total / self.dim() as f64
    }
}

/// Returns a copy of `x` with every out-of-bounds coordinate replaced by a
/// fresh uniform draw from that coordinate's interval.
///
/// In-bounds coordinates are returned bit-identical; each violating
/// coordinate consumes exactly one draw, in ascending coordinate order. NaN
/// counts as out of bounds, so repaired points never carry NaN.
pub fn resample_out_of_bounds(
    x: &[f64],
    space: &SearchSpace,
    rng: &mut RngStream,
) -> Result<Vec<f64>, Error> {
    if x.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: x.len(),
        });
    }
    let mut repaired = x.to_vec();
    repair_in_place(&mut repaired, space, rng);
    Ok(repaired)
}

/// In-place variant of [`resample_out_of_bounds`] for pre-sized buffers.
/// Returns how many coordinates were resampled.
pub fn repair_in_place(x: &mut [f64], space: &SearchSpace, rng: &mut RngStream) -> usize {
    assert_eq!(x.len(), space.dim(), "repair_in_place dimension mismatch");
    let mut repaired = 0;
    for (j, v) in x.iter_mut().enumerate() {
        let lo = space.lower()[j];
        let hi = space.upper()[j];
        if !(*v >= lo && *v <= hi) {
            *v = rng.uniform_in(lo, hi);
            repaired += 1;
        }
    }
    repaired
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_bounds() {
        assert!(SearchSpace::new(vec![0.0], vec![0.0]).is_err());
        assert!(SearchSpace::new(vec![1.0], vec![-1.0]).is_err());
        assert!(SearchSpace::new(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![], vec![]).is_err());
        assert!(SearchSpace::new(vec![f64::NAN], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![0.0], vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn contains_is_closed_and_nan_safe() {
        let space = SearchSpace::symmetric(2, 1.0).unwrap();
        assert!(space.contains(&[1.0, -1.0]));
        assert!(!space.contains(&[1.0 + 1e-12, 0.0]));
        assert!(!space.contains(&[f64::NAN, 0.0]));
        assert!(!space.contains(&[0.0]));
    }

    #[test]
    fn sampling_stays_inside_and_counts_draws() {
        let space = SearchSpace::new(vec![-5.0, 0.0, 10.0], vec![5.0, 0.1, 20.0]).unwrap();
        let mut rng = RngStream::new(17);
        for _ in 0..1_000 {
            let before = rng.draws();
            let x = space.sample_uniform(&mut rng);
            assert!(space.contains(&x));
            assert_eq!(rng.draws() - before, 3);
        }
    }

    #[test]
    fn resample_touches_only_violations() {
        let space = SearchSpace::symmetric(4, 1.0).unwrap();
        let mut rng = RngStream::new(23);
        let x = [0.25, 7.0, -0.5, -3.0];
        let before = rng.draws();
        let y = resample_out_of_bounds(&x, &space, &mut rng).unwrap();
        assert_eq!(rng.draws() - before, 2);
        assert_eq!(y[0].to_bits(), x[0].to_bits());
        assert_eq!(y[2].to_bits(), x[2].to_bits());
        assert!(space.contains(&y));
        assert_ne!(y[1], x[1]);
        assert_ne!(y[3], x[3]);
    }

    #[test]
    fn resample_repairs_nan() {
        let space = SearchSpace::symmetric(2, 1.0).unwrap();
        let mut rng = RngStream::new(29);
        let y = resample_out_of_bounds(&[f64::NAN, 0.0], &space, &mut rng).unwrap();
        assert!(space.contains(&y));
    }

    #[test]
    fn resample_checks_dimension() {
        let space = SearchSpace::symmetric(3, 1.0).unwrap();
        let mut rng = RngStream::new(31);
        let err = resample_out_of_bounds(&[0.0; 2], &space, &mut rng).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                actual: 2
            }
        ));
    }

    #[test]
    fn in_bounds_point_consumes_no_draws() {
        let space = SearchSpace::symmetric(5, 2.0).unwrap();
        let mut rng = RngStream::new(37);
        let x = [0.0, 1.0, -1.0, 2.0, -2.0];
        let before = rng.draws();
        let y = resample_out_of_bounds(&x, &space, &mut rng).unwrap();
        assert_eq!(rng.draws(), before);
        assert_eq!(x.to_vec(), y);
    }

    #[test]
    fn mean_half_width_averages() {
        let space = SearchSpace::new(vec![-1.0, -10.0], vec![1.0, 10.0]).unwrap();
        assert_eq!(space.mean_half_width(), 5.5);
    }

    #[test]
    fn denormalize_maps_unit_cube_onto_box() {
        let space = SearchSpace::new(vec![-5.0, 0.0], vec![5.0, 20.0]).unwrap();
        assert_eq!(space.denormalize(&[0.0, 0.0]), vec![-5.0, 0.0]);
        assert_eq!(space.denormalize(&[1.0, 1.0]), vec![5.0, 20.0]);
        assert_eq!(space.denormalize(&[0.5, 0.25]), vec![0.0, 5.0]);
    }
}
