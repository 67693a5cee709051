use crate::error::Error;
use crate::rng::RngStream;

/// Dense square matrix in row-major order, used for rotations.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        SquareMatrix { dim, data }
    }

    pub fn from_rows(dim: usize, data: Vec<f64>) -> Result<Self, Error> {
        if data.len() != dim * dim || dim == 0 {
            return Err(Error::param("data", "must hold dim * dim entries"));
        }
        Ok(SquareMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    /// `y = M x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![0.0; self.dim];
        self.mul_vec_into(x, &mut y);
        y
    }

    /// `y = M x` without allocating.
    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (i, out) in y.iter_mut().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            *out = row.iter().zip(x).map(|(m, v)| m * v).sum();
        }
    }

    /// `y = M^T x`. For an orthogonal matrix this is the inverse transform.
    pub fn transpose_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![0.0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            for (out, m) in y.iter_mut().zip(row) {
                *out += m * xi;
            }
        }
        y
    }

    /// Largest absolute deviation of `M M^T` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                let dot: f64 = (0..self.dim)
                    .map(|k| self.get(i, k) * self.get(j, k))
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Draws a random orthogonal matrix by Gram-Schmidt on a square of standard
/// Gaussian entries.
///
/// Each Gaussian comes from one Box-Muller cosine transform, consuming two
/// uniforms, so a full draw costs `2 dim^2` draws plus two per degenerate
/// row redraw (which has negligible probability). Rows are orthonormalized
/// with a second re-orthogonalization pass to keep the defect near machine
/// precision; the determinant is +-1 and both signs occur.
pub fn random_orthogonal(dim: usize, rng: &mut RngStream) -> Result<SquareMatrix, Error> {
    if dim == 0 {
        return Err(Error::param("dim", "must be at least 1"));
    }
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while rows.len() < dim {
        let mut row: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        for prev in &rows {
            subtract_projection(&mut row, prev);
        }
        for prev in &rows {
            subtract_projection(&mut row, prev);
        }
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        // A Gaussian row is almost surely independent of the span so far; a
        // tiny norm means cancellation and we simply redraw the row.
        if norm < 1e-8 {
            continue;
        }
        for v in &mut row {
            *v /= norm;
        }
        rows.push(row);
    }
    SquareMatrix::from_rows(dim, rows.concat())
}

fn gaussian(rng: &mut RngStream) -> f64 {
    let u1 = rng.next_uniform();
    let u2 = rng.next_uniform();
    let r = (-2.0 * (1.0 - u1).ln()).max(0.0).sqrt();
    r * (2.0 * std::f64::consts::PI * u2).cos()
}

fn subtract_projection(row: &mut [f64], unit: &[f64]) {
    let dot: f64 = row.iter().zip(unit).map(|(a, b)| a * b).sum();
    for (r, u) in row.iter_mut().zip(unit) {
        *r -= dot * u;
    }
}
