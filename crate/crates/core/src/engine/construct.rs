//! Wide-sense Gaussian laws that are not narrow-sense, yet make the forms
//! independent (or the conditional law symmetric).

use alloc::vec::Vec;

use crate::algebra::{Kind, Scalar, REAL_AXIS_TOL};
use crate::engine::classify::{classify_heyde, classify_skitovich_darmois, VerdictKind};
use crate::engine::criterion::CRITERION_TOL;
use crate::engine::forms::LinearForm;
use crate::error::{Error, Result};
use crate::gaussian::{is_scalar_matrix, validate_shape, GaussianLaw};
use crate::linalg::Matrix;

/// Shapes within this distance of `sigma * I` count as scalar.
pub const NARROW_TOL: f64 = 1e-12;

/// Default nonscalar PSD shape: `[[2,1],[1,1]]` in R^2, `diag(2,1,1,1)` in R^4.
pub fn preset_shape(kind: Kind) -> Matrix {
    match kind {
        Kind::Complex => Matrix::from_rows(&[[2.0, 1.0], [1.0, 1.0]]),
        Kind::Quaternion => Matrix::diagonal(&[2.0, 1.0, 1.0, 1.0]),
    }
    .expect("preset shapes are well formed")
}

fn check_nonscalar_shape(shape: &Matrix, kind: Kind) -> Result<()> {
    if shape.dim() != kind.dim() {
        return Err(Error::DimensionMismatch { expected: kind.dim(), found: shape.dim() });
    }
    validate_shape(shape)?;
    if is_scalar_matrix(shape, NARROW_TOL) {
        return Err(Error::ScalarShape);
    }
    Ok(())
}

/// Zero-mean laws with shapes `A = -aB` and `B` for real `alpha = a < 0`;
/// `xi_1 + xi_2` and `xi_1 + alpha xi_2` are then independent.
pub fn construct_sd_counterexample(alpha: &Scalar, shape_b: &Matrix) -> Result<(GaussianLaw, GaussianLaw)> {
    let verdict = classify_skitovich_darmois(alpha)?;
    if verdict.verdict != VerdictKind::CounterexampleExists {
        return Err(Error::NoCounterexample { reason: verdict.rationale });
    }
    build_pair(alpha, shape_b)
}

/// The same pair for the conditional-symmetry problem; `alpha = -1` is excluded.
pub fn construct_heyde_counterexample(alpha: &Scalar, shape_b: &Matrix) -> Result<(GaussianLaw, GaussianLaw)> {
    let verdict = classify_heyde(alpha)?;
    match verdict.verdict {
        VerdictKind::CounterexampleExists => build_pair(alpha, shape_b),
        VerdictKind::Excluded => Err(Error::Excluded { reason: verdict.rationale }),
        VerdictKind::DegenerateForced => Err(Error::NoCounterexample { reason: verdict.rationale }),
    }
}

fn build_pair(alpha: &Scalar, shape_b: &Matrix) -> Result<(GaussianLaw, GaussianLaw)> {
    debug_assert!(alpha.is_real(REAL_AXIS_TOL) && alpha.re() < 0.0);
    check_nonscalar_shape(shape_b, alpha.kind())?;
    let shape_a = shape_b.scale(-alpha.re());
    Ok((GaussianLaw::centered(shape_a)?, GaussianLaw::centered(*shape_b)?))
}

/// Turns narrow-sense data `sigma_j` satisfying `sum sigma_j conj(beta_j) = 0`
/// into zero-mean laws with shapes `sigma_j A`, which keep
/// `xi_1 + ... + xi_n` and `beta_1 xi_1 + ... + beta_n xi_n` independent.
pub fn construct_proposition1(sigmas: &[f64], betas: &LinearForm, shape: &Matrix) -> Result<Vec<GaussianLaw>> {
    if sigmas.len() != betas.len() {
        return Err(Error::LengthMismatch { expected: betas.len(), found: sigmas.len() });
    }
    for (index, &value) in sigmas.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveSigma { index, value });
        }
    }
    let kind = betas.kind();
    check_nonscalar_shape(shape, kind)?;
    let residual = narrow_sense_constraint(sigmas, betas).frobenius_norm();
    if residual >= CRITERION_TOL {
        return Err(Error::CoefficientConstraint { residual });
    }
    sigmas.iter().map(|&s| GaussianLaw::centered(shape.scale(s))).collect()
}

/// `sum_j sigma_j embed(conj beta_j)`; zero iff narrow-sense laws with
/// variances `sigma_j` make the forms independent.
pub fn narrow_sense_constraint(sigmas: &[f64], betas: &LinearForm) -> Matrix {
    let dim = betas.kind().dim();
    sigmas
        .iter()
        .zip(betas.coefficients())
        .fold(Matrix::zeros(dim), |acc, (s, b)| acc + b.conjugate().embed().scale(*s))
}
