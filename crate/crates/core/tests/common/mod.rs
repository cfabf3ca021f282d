//! Random inputs and small reference computations shared by the integration
//! tests. Nothing here calls into the code under test beyond plain
//! constructors.

#![allow(dead_code)]

use hyperchar_core::rng::{stream_rng, uniform, NormalSource};
use hyperchar_core::{Kind, Matrix, Scalar};
use rand_chacha::ChaCha8Rng;

pub struct Draws {
    normals: NormalSource<ChaCha8Rng>,
    uniforms: ChaCha8Rng,
}

impl Draws {
    pub fn new(seed: u64) -> Self {
        Draws { normals: NormalSource::from_stream(seed, 0), uniforms: stream_rng(seed, 1) }
    }

    pub fn normal(&mut self) -> f64 {
        self.normals.sample()
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * uniform(&mut self.uniforms)
    }

    pub fn scalar(&mut self, kind: Kind) -> Scalar {
        let parts: Vec<f64> = (0..kind.dim()).map(|_| self.normal()).collect();
        Scalar::from_components(&parts).unwrap()
    }

    /// A scalar whose imaginary part has norm at least `min_imag`.
    pub fn nonreal_scalar(&mut self, kind: Kind, min_imag: f64) -> Scalar {
        loop {
            let s = self.scalar(kind);
            if s.imag_norm_squared().sqrt() >= min_imag {
                return s;
            }
        }
    }

    pub fn unit_scalar(&mut self, kind: Kind) -> Scalar {
        let s = self.nonreal_scalar(kind, 0.1);
        s.scale(1.0 / s.norm_squared().sqrt())
    }

    /// `G G^T` with entries of `G` drawn at the given scale.
    pub fn psd(&mut self, dim: usize, scale: f64) -> Matrix {
        let mut g = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                g[(i, j)] = scale * self.normal();
            }
        }
        g * g.transpose()
    }
}

/// Direct Hamilton product on component arrays, written out term by term.
pub fn hamilton(x: &[f64], y: &[f64]) -> [f64; 4] {
    let q = |v: &[f64]| [v[0], v[1], *v.get(2).unwrap_or(&0.0), *v.get(3).unwrap_or(&0.0)];
    let (a, b) = (q(x), q(y));
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Basis of the nullspace of the `rows x cols` matrix `m` (row-major), by
/// Gauss-Jordan elimination with partial pivoting.
pub fn nullspace(m: &[Vec<f64>], cols: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let best = (row..a.len()).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[best][col].abs() <= tol {
            continue;
        }
        a.swap(row, best);
        let p = a[row][col];
        for x in a[row].iter_mut() {
            *x /= p;
        }
        let pivot_row = a[row].clone();
        for (i, other) in a.iter_mut().enumerate() {
            let f = other[col];
            if i != row && f != 0.0 {
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0.0; cols];
            v[free] = 1.0;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free];
            }
            v
        })
        .collect()
}

/// Symmetric matrices parameterized by their upper triangle.
pub fn symmetric_from_upper(dim: usize, params: &[f64]) -> Matrix {
    let mut m = Matrix::zeros(dim);
    let mut k = 0;
    for i in 0..dim {
        for j in i..dim {
            m[(i, j)] = params[k];
            m[(j, i)] = params[k];
            k += 1;
        }
    }
    m
}

/// Symmetric `B` with `B E` symmetric, as a basis of upper-triangle vectors.
pub fn symmetric_commutant_basis(e: &Matrix) -> Vec<Matrix> {
    let dim = e.dim();
    let params = dim * (dim + 1) / 2;
    // Column k of the system is the skew part of (basis_k * E), flattened.
    let columns: Vec<Vec<f64>> = (0..params)
        .map(|k| {
            let mut unit = vec![0.0; params];
            unit[k] = 1.0;
            let be = symmetric_from_upper(dim, &unit) * *e;
            let mut out = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    out.push(be[(i, j)] - be[(j, i)]);
                }
            }
            out
        })
        .collect();
    let rows = columns[0].len();
    let system: Vec<Vec<f64>> = (0..rows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    nullspace(&system, params, 1e-12).into_iter().map(|v| symmetric_from_upper(dim, &v)).collect()
}
