//! Pointwise checks of the characteristic-function identities.
//!
//! Independence of `L1 = sum a_j xi_j` and `L2 = sum b_j xi_j` holds iff
//!
//! ```text
//! prod_j f_j(conj(a_j) u + conj(b_j) v) = prod_j f_j(conj(a_j) u) * prod_j f_j(conj(b_j) v)
//! ```
//!
//! for all `u, v`, and the conditional law of `xi_1 + alpha xi_2` given
//! `xi_1 + xi_2` is symmetric iff
//!
//! ```text
//! f_1(u + v) f_2(u + conj(alpha) v) = f_1(u - v) f_2(u - conj(alpha) v).
//! ```
//!
//! The residuals below are the largest gap between the two sides over a grid.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::Scalar;
use crate::engine::forms::LinearForm;
use crate::error::{Error, Result};
use crate::gaussian::CharacteristicFunction;
use crate::linalg::{Matrix, Vector};
use crate::rng::NormalSource;

/// Seed of the fixed random grid used in R^4.
pub const DEFAULT_GRID_SEED: u64 = 0x5EED_0004;
pub const DEFAULT_RANDOM_PAIRS: usize = 500;

/// Evaluation points `(u, v)` in R^dim x R^dim.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    dim: usize,
    pairs: Vec<(Vector, Vector)>,
}

impl Grid {
    /// Every `(u, v)` with all coordinates of both drawn from `points`:
    /// `points.len()^(2 dim)` pairs.
    pub fn lattice(dim: usize, points: &[f64]) -> Result<Grid> {
        let axis = lattice_vectors(dim, points)?;
        let mut pairs = Vec::with_capacity(axis.len() * axis.len());
        for u in &axis {
            for v in &axis {
                pairs.push((*u, *v));
            }
        }
        Ok(Grid { dim, pairs })
    }

    /// `count` pairs with independent standard-normal coordinates.
    pub fn random(dim: usize, count: usize, seed: u64) -> Result<Grid> {
        check_dim(dim)?;
        let mut normals = NormalSource::from_stream(seed, 0);
        let mut draw = || {
            let mut x = Vector::zeros(dim);
            for k in 0..dim {
                x[k] = normals.sample();
            }
            x
        };
        let pairs = (0..count).map(|_| (draw(), draw())).collect();
        Ok(Grid { dim, pairs })
    }

    /// `{-2,-1,0,1,2}^2` for both `u` and `v` in R^2 (625 pairs), and 500
    /// fixed standard-normal pairs in R^4.
    pub fn default_for(dim: usize) -> Result<Grid> {
        match dim {
            2 => Grid::lattice(2, &[-2.0, -1.0, 0.0, 1.0, 2.0]),
            4 => Grid::random(4, DEFAULT_RANDOM_PAIRS, DEFAULT_GRID_SEED),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    pub fn from_pairs(dim: usize, pairs: Vec<(Vector, Vector)>) -> Result<Grid> {
        check_dim(dim)?;
        for (u, v) in &pairs {
            for x in [u, v] {
                if x.dim() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: x.dim() });
                }
            }
        }
        Ok(Grid { dim, pairs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> &[(Vector, Vector)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn lattice_vectors(dim: usize, points: &[f64]) -> Result<Vec<Vector>> {
    check_dim(dim)?;
    let mut out = alloc::vec![Vector::zeros(dim)];
    for k in 0..dim {
        out = out
            .into_iter()
            .flat_map(|base| {
                points.iter().map(move |&p| {
                    let mut x = base;
                    x[k] = p;
                    x
                })
            })
            .collect();
    }
    Ok(out)
}

fn check_law_dims<C: CharacteristicFunction>(laws: &[&C], dim: usize) -> Result<()> {
    for law in laws {
        if law.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: law.dim() });
        }
    }
    Ok(())
}

fn conj_embeddings(form: &LinearForm) -> Vec<Matrix> {
    form.coefficients().iter().map(|c| c.conjugate().embed()).collect()
}

/// Largest `|LHS - RHS|` of the independence identity over `grid`.
pub fn independence_residual<C: CharacteristicFunction>(
    laws: &[C],
    alphas: &LinearForm,
    betas: &LinearForm,
    grid: &Grid,
) -> Result<f64> {
    let n = laws.len();
    for form in [alphas, betas] {
        if form.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: form.len() });
        }
    }
    if alphas.kind() != betas.kind() {
        return Err(Error::KindMismatch { left: alphas.kind(), right: betas.kind() });
    }
    let dim = alphas.kind().dim();
    if grid.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: grid.dim() });
    }
    let refs: Vec<&C> = laws.iter().collect();
    check_law_dims(&refs, dim)?;

    let a = conj_embeddings(alphas);
    let b = conj_embeddings(betas);
    let mut worst: f64 = 0.0;
    for (u, v) in grid.pairs() {
        let mut joint = Complex64::new(1.0, 0.0);
        let mut first = Complex64::new(1.0, 0.0);
        let mut second = Complex64::new(1.0, 0.0);
        for (j, law) in laws.iter().enumerate() {
            let au = a[j].mul_vec(u);
            let bv = b[j].mul_vec(v);
            joint *= law.evaluate(&(au + bv));
            first *= law.evaluate(&au);
            second *= law.evaluate(&bv);
        }
        worst = worst.max((joint - first * second).norm());
    }
    Ok(worst)
}

/// Largest `|f_1(u+v) f_2(u+conj(alpha)v) - f_1(u-v) f_2(u-conj(alpha)v)|`
/// over `grid`.
pub fn symmetry_residual<C: CharacteristicFunction>(law1: &C, law2: &C, alpha: &Scalar, grid: &Grid) -> Result<f64> {
    let dim = alpha.kind().dim();
    if grid.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: grid.dim() });
    }
    check_law_dims(&[law1, law2], dim)?;
    let a = alpha.conjugate().embed();
    let mut worst: f64 = 0.0;
    for (u, v) in grid.pairs() {
        let av = a.mul_vec(v);
        let plus = law1.evaluate(&(*u + *v)) * law2.evaluate(&(*u + av));
        let minus = law1.evaluate(&(*u - *v)) * law2.evaluate(&(*u - av));
        worst = worst.max((plus - minus).norm());
    }
    Ok(worst)
}
