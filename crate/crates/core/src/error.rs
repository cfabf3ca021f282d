use core::fmt;

use crate::algebra::Kind;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Complex and quaternion scalars were combined.
    KindMismatch {
        left: Kind,
        right: Kind,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Laws live on R^2 or R^4 only.
    UnsupportedDimension(usize),
    /// Inverse of a zero scalar was requested.
    SingularScalar,
    NotSymmetric {
        defect: f64,
    },
    NotPositiveSemidefinite {
        min_eigenvalue: f64,
    },
    /// A nonscalar shape matrix was required but a scalar one was given.
    ScalarShape,
    ZeroCoefficient {
        index: usize,
    },
    TooFewCoefficients(usize),
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    /// The theorem rules out a counterexample for this coefficient.
    NoCounterexample {
        reason: &'static str,
    },
    /// The coefficient lies outside the theorem's hypotheses.
    Excluded {
        reason: &'static str,
    },
    /// `sum sigma_j * conj(beta_j)` does not vanish.
    CoefficientConstraint {
        residual: f64,
    },
    NonPositiveSigma {
        index: usize,
        value: f64,
    },
    InvalidSampleSize(usize),
    TooManySamples {
        n: usize,
        max: usize,
    },
    TooFewPermutations {
        permutations: usize,
        min: usize,
    },
    NonFinite,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::KindMismatch { left, right } => {
                write!(f, "cannot combine {left:?} and {right:?} scalars")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::UnsupportedDimension(d) => write!(f, "unsupported dimension {d} (expected 2 or 4)"),
            Error::SingularScalar => write!(f, "zero scalar has no inverse"),
            Error::NotSymmetric { defect } => {
                write!(f, "shape matrix is not symmetric (max asymmetry {defect:e})")
            }
            Error::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(f, "shape matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")
            }
            Error::ScalarShape => write!(f, "shape matrix must be nonscalar"),
            Error::ZeroCoefficient { index } => write!(f, "coefficient {index} is zero"),
            Error::TooFewCoefficients(n) => {
                write!(f, "a linear form needs at least 2 coefficients, got {n}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::NoCounterexample { reason } => write!(f, "no counterexample exists ({reason})"),
            Error::Excluded { reason } => write!(f, "excluded coefficient ({reason})"),
            Error::CoefficientConstraint { residual } => {
                write!(f, "sum of sigma_j * conj(beta_j) does not vanish (norm {residual:e})")
            }
            Error::NonPositiveSigma { index, value } => {
                write!(f, "sigma {index} must be positive, got {value}")
            }
            Error::InvalidSampleSize(n) => write!(f, "invalid sample size {n}"),
            Error::TooManySamples { n, max } => {
                write!(f, "sample size {n} exceeds the limit {max} for this test")
            }
            Error::TooFewPermutations { permutations, min } => {
                write!(f, "{permutations} permutations requested, at least {min} required")
            }
            Error::NonFinite => write!(f, "non-finite value"),
        }
    }
}

impl core::error::Error for Error {}
