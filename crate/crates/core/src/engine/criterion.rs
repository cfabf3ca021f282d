//! Matrix criteria for Gaussian laws.
//!
//! Plugging `f_j(y) = exp{i<x_j, y> - <A_j y, y>}` into the independence
//! identity, the mean terms cancel and the quadratic terms leave
//! `exp{-2 <M v, u>}` with
//!
//! ```text
//! M = sum_j embed(conj a_j)^T A_j embed(conj b_j) = sum_j embed(a_j) A_j embed(conj b_j),
//! ```
//!
//! so the forms are independent iff `M = 0`. For `L1 = xi_1 + xi_2`,
//! `L2 = xi_1 + alpha xi_2` this reads `A + B embed(conj alpha) = 0`.
//!
//! For conditional symmetry the ratio of the two sides is
//! `exp{2i<x_1 + embed(alpha) x_2, v> - 4<(A + B embed(conj alpha)) v, u>}`,
//! giving a shape condition and a mean condition.

use crate::algebra::Scalar;
use crate::engine::forms::LinearForm;
use crate::error::{Error, Result};
use crate::gaussian::GaussianLaw;
use crate::linalg::{Matrix, Vector};

/// Frobenius norm below which a criterion matrix counts as zero.
pub const CRITERION_TOL: f64 = 1e-10;

pub fn gaussian_independence_criterion(
    laws: &[GaussianLaw],
    alphas: &LinearForm,
    betas: &LinearForm,
) -> Result<Matrix> {
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
    let mut total = Matrix::zeros(dim);
    for ((law, a), b) in laws.iter().zip(alphas.coefficients()).zip(betas.coefficients()) {
        if law.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: law.dim() });
        }
        total = total + a.embed() * *law.shape() * b.conjugate().embed();
    }
    Ok(total)
}

/// Both parts of the Gaussian conditional-symmetry condition; symmetric iff
/// both vanish.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryCriterion {
    /// `A + B embed(conj alpha)`
    pub shape: Matrix,
    /// `x_1 + embed(alpha) x_2`
    pub mean: Vector,
}

impl SymmetryCriterion {
    pub fn holds(&self, tol: f64) -> bool {
        self.shape.frobenius_norm() < tol && self.mean.norm() < tol
    }
}

pub fn gaussian_symmetry_criterion(
    law1: &GaussianLaw,
    law2: &GaussianLaw,
    alpha: &Scalar,
) -> Result<SymmetryCriterion> {
    let dim = alpha.kind().dim();
    for law in [law1, law2] {
        if law.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: law.dim() });
        }
    }
    Ok(SymmetryCriterion {
        shape: *law1.shape() + *law2.shape() * alpha.conjugate().embed(),
        mean: *law1.mean() + alpha.embed().mul_vec(law2.mean()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Kind;

    fn m2(rows: [[f64; 2]; 2]) -> Matrix {
        Matrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn two_variable_case_reduces_to_a_plus_b_alpha_bar() {
        let a = GaussianLaw::centered(m2([[3.0, 1.0], [1.0, 2.0]])).unwrap();
        let b = GaussianLaw::centered(m2([[1.0, -0.5], [-0.5, 4.0]])).unwrap();
        let alpha = Scalar::complex(0.7, -1.3);
        let m = gaussian_independence_criterion(
            &[a, b],
            &LinearForm::sum(Kind::Complex, 2).unwrap(),
            &LinearForm::with_alpha(alpha).unwrap(),
        )
        .unwrap();
        let expected = *a.shape() + *b.shape() * alpha.conjugate().embed();
        assert!((m - expected).max_abs() < 1e-15);
    }

    #[test]
    fn narrow_sense_cancellation() {
        let law = GaussianLaw::centered(Matrix::identity(2)).unwrap();
        let m = gaussian_independence_criterion(
            &[law, law],
            &LinearForm::sum(Kind::Complex, 2).unwrap(),
            &LinearForm::with_alpha(Scalar::real(Kind::Complex, -1.0)).unwrap(),
        )
        .unwrap();
        assert_eq!(m, Matrix::zeros(2));
    }

    #[test]
    fn symmetry_criterion_sees_means() {
        let shape = m2([[2.0, 1.0], [1.0, 1.0]]);
        let alpha = Scalar::real(Kind::Complex, -2.0);
        let l1 = GaussianLaw::new(Vector::from_slice(&[1.0, 0.0]).unwrap(), shape.scale(2.0)).unwrap();
        let l2 = GaussianLaw::centered(shape).unwrap();
        let c = gaussian_symmetry_criterion(&l1, &l2, &alpha).unwrap();
        assert!(c.shape.max_abs() < 1e-15);
        assert!(!c.holds(1e-10));
    }
}
