//! Gaussian laws on R^2 and R^4 described by their characteristic function
//! `exp{i<x, y> - <A y, y>}`.
//!
//! The shape matrix `A` is stored as given; the covariance of the law is
//! `2A`. Sampling converts at that boundary and nowhere else.

use alloc::vec::Vec;

use libm::{cos, exp, sin, sqrt};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rng::NormalSource;

/// Largest tolerated `|a_ij - a_ji|` for a shape matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Most negative eigenvalue still accepted as PSD.
pub const PSD_TOL: f64 = -1e-10;

/// Anything with a characteristic function on R^dim.
pub trait CharacteristicFunction {
    fn dim(&self) -> usize;

    /// Value at `y`; callers guarantee `y.dim() == self.dim()`.
    fn evaluate(&self, y: &Vector) -> Complex64;
}

/// A wide-sense Gaussian law: mean vector and symmetric PSD shape matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "LawRepr", try_from = "LawRepr")]
pub struct GaussianLaw {
    mean: Vector,
    shape: Matrix,
}

#[derive(Serialize, Deserialize)]
struct LawRepr {
    dim: usize,
    mean: Vec<f64>,
    shape: Vec<Vec<f64>>,
}

impl From<GaussianLaw> for LawRepr {
    fn from(law: GaussianLaw) -> Self {
        LawRepr {
            dim: law.dim(),
            mean: law.mean.as_slice().to_vec(),
            shape: (0..law.dim()).map(|i| law.shape.row(i).to_vec()).collect(),
        }
    }
}

impl TryFrom<LawRepr> for GaussianLaw {
    type Error = Error;

    fn try_from(r: LawRepr) -> Result<Self> {
        if r.mean.len() != r.dim {
            return Err(Error::DimensionMismatch { expected: r.dim, found: r.mean.len() });
        }
        if r.shape.len() != r.dim {
            return Err(Error::DimensionMismatch { expected: r.dim, found: r.shape.len() });
        }
        GaussianLaw::new(Vector::from_slice(&r.mean)?, Matrix::from_rows(&r.shape)?)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Checks that `shape` is a symmetric PSD matrix of dimension 2 or 4.
pub fn validate_shape(shape: &Matrix) -> Result<()> {
    check_dim(shape.dim())?;
    if !shape.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = shape.asymmetry();
    if defect > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { defect });
    }
    let min_eigenvalue = shape.symmetric_eigen().min_value();
    if min_eigenvalue < PSD_TOL {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    Ok(())
}

/// True when `shape` is `sigma * I` up to `tol`: off-diagonal entries and the
/// spread of the diagonal both fall below `tol`.
pub fn is_scalar_matrix(shape: &Matrix, tol: f64) -> bool {
    let n = shape.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        for j in 0..n {
            let x = shape[(i, j)];
            if i == j {
                lo = lo.min(x);
                hi = hi.max(x);
            } else if x.abs() >= tol {
                return false;
            }
        }
    }
    hi - lo < tol
}

impl GaussianLaw {
    pub fn new(mean: Vector, shape: Matrix) -> Result<Self> {
        validate_shape(&shape)?;
        if mean.dim() != shape.dim() {
            return Err(Error::DimensionMismatch { expected: shape.dim(), found: mean.dim() });
        }
        if !mean.as_slice().iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(GaussianLaw { mean, shape })
    }

    /// Zero-mean law with the given shape.
    pub fn centered(shape: Matrix) -> Result<Self> {
        GaussianLaw::new(Vector::zeros(shape.dim()), shape)
    }

    /// Point mass at `mean`.
    pub fn degenerate(mean: Vector) -> Result<Self> {
        GaussianLaw::new(mean, Matrix::zeros(mean.dim()))
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn mean(&self) -> &Vector {
        &self.mean
    }

    pub fn shape(&self) -> &Matrix {
        &self.shape
    }

    pub fn covariance(&self) -> Matrix {
        self.shape.scale(2.0)
    }

    pub fn char_function(&self, y: &Vector) -> Result<Complex64> {
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: y.dim() });
        }
        Ok(self.evaluate(y))
    }

    pub fn is_narrow_sense(&self, tol: f64) -> bool {
        is_scalar_matrix(&self.shape, tol)
    }

    pub fn is_degenerate(&self, tol: f64) -> bool {
        self.shape.max_abs() < tol
    }

    pub fn sampler(&self) -> Sampler {
        Sampler::new(self)
    }

    /// `n` independent draws; identical `(n, seed)` give identical batches.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SampleBatch> {
        self.sample_stream(n, seed, 0)
    }

    pub fn sample_stream(&self, n: usize, seed: u64, stream: u64) -> Result<SampleBatch> {
        if n == 0 {
            return Err(Error::InvalidSampleSize(n));
        }
        let sampler = self.sampler();
        let mut normals = NormalSource::from_stream(seed, stream);
        let rows = (0..n).map(|_| sampler.draw(&mut normals)).collect();
        Ok(SampleBatch { dim: self.dim(), seed, rows })
    }
}

impl CharacteristicFunction for GaussianLaw {
    fn dim(&self) -> usize {
        self.shape.dim()
    }

    fn evaluate(&self, y: &Vector) -> Complex64 {
        let phase = self.mean.dot(y);
        let modulus = exp(-self.shape.quadratic_form(y));
        Complex64::new(modulus * cos(phase), modulus * sin(phase))
    }
}

/// Draws from a law as `mean + F z` with `F F^T = 2A` taken from the
/// spectral decomposition, so rank-deficient shapes are handled.
#[derive(Clone, Debug)]
pub struct Sampler {
    mean: Vector,
    factor: Matrix,
}

impl Sampler {
    fn new(law: &GaussianLaw) -> Self {
        let eig = law.covariance().symmetric_eigen();
        let n = law.dim();
        // Relative cutoff sends numerically-null directions exactly to zero.
        let cutoff = 1e-12 * eig.max_value().max(0.0);
        let mut factor = Matrix::zeros(n);
        for k in 0..n {
            let lambda = eig.values[k];
            if lambda <= cutoff {
                continue;
            }
            let root = sqrt(lambda);
            for i in 0..n {
                factor[(i, k)] = eig.vectors[(i, k)] * root;
            }
        }
        Sampler { mean: law.mean, factor }
    }

    pub fn draw<R: rand_core::RngCore>(&self, normals: &mut NormalSource<R>) -> Vector {
        let n = self.mean.dim();
        let mut z = Vector::zeros(n);
        for k in 0..n {
            z[k] = normals.sample();
        }
        self.mean + self.factor.mul_vec(&z)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub dim: usize,
    pub seed: u64,
    pub rows: Vec<Vector>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn mean(&self) -> Vector {
        let sum = self.rows.iter().fold(Vector::zeros(self.dim), |acc, r| acc + *r);
        sum.scale(1.0 / self.rows.len() as f64)
    }

    /// Covariance with divisor `n`.
    pub fn covariance(&self) -> Matrix {
        let m = self.mean();
        let mut c = Matrix::zeros(self.dim);
        for r in &self.rows {
            let d = *r - m;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    c[(i, j)] += d[i] * d[j];
                }
            }
        }
        c.scale(1.0 / self.rows.len() as f64)
    }
}
