use alloc::vec::Vec;

use crate::algebra::{Kind, Scalar};
use crate::error::{Error, Result};

/// Coefficients `(c_1, ..., c_n)` of a linear form `c_1 xi_1 + ... + c_n xi_n`
/// in independent hypercomplex random variables. Scalars act from the left.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    coefficients: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<Scalar>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::TooFewCoefficients(coefficients.len()));
        }
        let kind = coefficients[0].kind();
        for (index, c) in coefficients.iter().enumerate() {
            if c.kind() != kind {
                return Err(Error::KindMismatch { left: kind, right: c.kind() });
            }
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
            if c.is_zero() {
                return Err(Error::ZeroCoefficient { index });
            }
        }
        Ok(LinearForm { coefficients })
    }

    /// `xi_1 + ... + xi_n`
    pub fn sum(kind: Kind, n: usize) -> Result<Self> {
        LinearForm::new(alloc::vec![Scalar::one(kind); n])
    }

    pub fn pair(first: Scalar, second: Scalar) -> Result<Self> {
        LinearForm::new(alloc::vec![first, second])
    }

    /// `xi_1 + alpha xi_2`
    pub fn with_alpha(alpha: Scalar) -> Result<Self> {
        LinearForm::pair(Scalar::one(alpha.kind()), alpha)
    }

    pub fn kind(&self) -> Kind {
        self.coefficients[0].kind()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    /// Rewrites the form in the variables `xi'_j = s_j xi_j`: each coefficient
    /// becomes `c_j s_j^{-1}`.
    pub fn substitute(&self, scalings: &[Scalar]) -> Result<LinearForm> {
        if scalings.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: scalings.len() });
        }
        let coefficients = self
            .coefficients
            .iter()
            .zip(scalings)
            .map(|(c, s)| c.multiply(&s.inverse()?))
            .collect::<Result<Vec<_>>>()?;
        LinearForm::new(coefficients)
    }

    /// The form `factor * L`. Independence and conditional symmetry are
    /// unchanged by a nonzero left factor.
    pub fn left_scale(&self, factor: &Scalar) -> Result<LinearForm> {
        let coefficients = self.coefficients.iter().map(|c| factor.multiply(c)).collect::<Result<Vec<_>>>()?;
        LinearForm::new(coefficients)
    }
}
