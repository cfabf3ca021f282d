//! Fixed-capacity real vectors and square matrices.
//!
//! Everything in this crate lives in R^2 or R^4, so storage is inline and
//! sized for the largest case. Dimensions are checked at the boundaries.

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use libm::sqrt;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector {
    dim: usize,
    data: [f64; MAX_DIM],
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Vector { dim, data: [0.0; MAX_DIM] }
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        if values.len() > MAX_DIM || values.is_empty() {
            return Err(Error::UnsupportedDimension(values.len()));
        }
        let mut v = Vector::zeros(values.len());
        v.data[..values.len()].copy_from_slice(values);
        Ok(v)
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v[index] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.dim]
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice().iter().zip(other.as_slice()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.dot(self))
    }

    pub fn scale(&self, factor: f64) -> Vector {
        let mut out = *self;
        out.data.iter_mut().for_each(|x| *x *= factor);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.data[..self.dim][i]
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.data[i] += rhs.data[i];
        }
        self
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.data[i] -= rhs.data[i];
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

/// Square matrix of dimension at most [`MAX_DIM`], row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: [[f64; MAX_DIM]; MAX_DIM],
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Matrix { dim, data: [[0.0; MAX_DIM]; MAX_DIM] }
    }

    pub fn identity(dim: usize) -> Self {
        Matrix::scalar(dim, 1.0)
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.data[i][i] = value;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let v = Vector::from_slice(values)?;
        let mut m = Matrix::zeros(v.dim());
        for i in 0..v.dim() {
            m.data[i][i] = v[i];
        }
        Ok(m)
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut m = Matrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            m.data[i][..dim].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i][..self.dim]
    }

    pub fn column(&self, j: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        for i in 0..self.dim {
            v[i] = self.data[i][j];
        }
        v
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.data[j][i] = self.data[i][j];
            }
        }
        t
    }

    pub fn scale(&self, factor: f64) -> Matrix {
        let mut out = *self;
        for row in out.data.iter_mut() {
            row.iter_mut().for_each(|x| *x *= factor);
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        debug_assert_eq!(self.dim, v.dim());
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            out[i] = self.row(i).iter().zip(v.as_slice()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// `<self * y, y>`
    pub fn quadratic_form(&self, y: &Vector) -> f64 {
        self.mul_vec(y).dot(y)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.entries().map(|x| x * x).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn entries(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.dim).flat_map(move |i| self.row(i).iter().copied())
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self.data[i][j] - self.data[j][i]).abs());
            }
        }
        worst
    }

    pub fn symmetric_part(&self) -> Matrix {
        (*self + self.transpose()).scale(0.5)
    }

    pub fn skew_part(&self) -> Matrix {
        (*self - self.transpose()).scale(0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(f64::is_finite)
    }

    /// Eigen-decomposition of the symmetric part by cyclic Jacobi rotations.
    pub fn symmetric_eigen(&self) -> SymmetricEigen {
        jacobi_eigen(self.symmetric_part())
    }

    /// Nearest symmetric PSD matrix in Frobenius norm: symmetrize, then clip
    /// negative eigenvalues.
    pub fn psd_projection(&self) -> Matrix {
        let eig = self.symmetric_eigen();
        let clipped: [f64; MAX_DIM] = core::array::from_fn(|k| if k < self.dim { eig.values[k].max(0.0) } else { 0.0 });
        eig.recompose(&clipped[..self.dim])
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(i < self.dim && j < self.dim);
        &self.data[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        assert!(i < self.dim && j < self.dim);
        &mut self.data[i][j]
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(mut self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i][j] += rhs.data[i][j];
            }
        }
        self
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(mut self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i][j] -= rhs.data[i][j];
            }
        }
        self
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[i][j] = (0..n).map(|k| self.data[i][k] * rhs.data[k][j]).sum();
            }
        }
        out
    }
}

impl Mul<Vector> for Matrix {
    type Output = Vector;
    fn mul(self, rhs: Vector) -> Vector {
        self.mul_vec(&rhs)
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors stored as columns.
#[derive(Clone, Copy, Debug)]
pub struct SymmetricEigen {
    pub values: Vector,
    pub vectors: Matrix,
}

impl SymmetricEigen {
    pub fn min_value(&self) -> f64 {
        self.values.as_slice().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.as_slice().iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `V diag(values) V^T`
    pub fn recompose(&self, values: &[f64]) -> Matrix {
        let n = self.vectors.dim();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n).map(|k| self.vectors[(i, k)] * values[k] * self.vectors[(j, k)]).sum();
            }
        }
        out
    }
}

fn jacobi_eigen(mut a: Matrix) -> SymmetricEigen {
    let n = a.dim();
    let mut v = Matrix::identity(n);
    let scale = a.max_abs();
    if scale > 0.0 {
        for _sweep in 0..64 {
            let mut off = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += a[(i, j)] * a[(i, j)];
                }
            }
            if sqrt(off) <= 1e-18 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + sqrt(theta * theta + 1.0));
                    let c = 1.0 / sqrt(t * t + 1.0);
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order: [usize; MAX_DIM] = [0, 1, 2, 3];
    order[..n].sort_by(|&x, &y| a[(x, x)].total_cmp(&a[(y, y)]));
    let mut values = Vector::zeros(n);
    let mut vectors = Matrix::zeros(n);
    for (dst, &src) in order[..n].iter().enumerate() {
        values[dst] = a[(src, src)];
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }
    SymmetricEigen { values, vectors }
}
