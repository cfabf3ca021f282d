//! Complex numbers and quaternions with their real-matrix embeddings.
//!
//! A scalar `s` acts on a random vector `X` as the matrix `embed(s)`, so
//! `embed` is a ring homomorphism into 2x2 or 4x4 real matrices:
//!
//! ```text
//! a + ib          ->  [ a -b ]
//!                     [ b  a ]
//!
//! a + ib + jc + kd -> [ a -b -c -d ]
//!                     [ b  a -d  c ]
//!                     [ c  d  a -b ]
//!                     [ d -c  b  a ]
//! ```

use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Below this magnitude an imaginary component counts as zero.
pub const REAL_AXIS_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Complex,
    Quaternion,
}

impl Kind {
    /// Real dimension of the algebra, which is also the dimension of the
    /// random vectors it acts on.
    pub fn dim(self) -> usize {
        match self {
            Kind::Complex => 2,
            Kind::Quaternion => 4,
        }
    }

    pub fn from_dim(dim: usize) -> Result<Kind> {
        match dim {
            2 => Ok(Kind::Complex),
            4 => Ok(Kind::Quaternion),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }
}

/// A complex number `a + ib` or a quaternion `a + ib + jc + kd`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ScalarRepr", from = "ScalarRepr")]
pub struct Scalar {
    kind: Kind,
    // Trailing components stay zero for complex scalars.
    parts: [f64; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ScalarRepr {
    Complex { a: f64, b: f64 },
    Quaternion { a: f64, b: f64, c: f64, d: f64 },
}

impl From<Scalar> for ScalarRepr {
    fn from(s: Scalar) -> Self {
        let [a, b, c, d] = s.parts;
        match s.kind {
            Kind::Complex => ScalarRepr::Complex { a, b },
            Kind::Quaternion => ScalarRepr::Quaternion { a, b, c, d },
        }
    }
}

impl From<ScalarRepr> for Scalar {
    fn from(r: ScalarRepr) -> Self {
        match r {
            ScalarRepr::Complex { a, b } => Scalar::complex(a, b),
            ScalarRepr::Quaternion { a, b, c, d } => Scalar::quaternion(a, b, c, d),
        }
    }
}

impl Scalar {
    pub const fn complex(a: f64, b: f64) -> Self {
        Scalar { kind: Kind::Complex, parts: [a, b, 0.0, 0.0] }
    }

    pub const fn quaternion(a: f64, b: f64, c: f64, d: f64) -> Self {
        Scalar { kind: Kind::Quaternion, parts: [a, b, c, d] }
    }

    pub const fn real(kind: Kind, a: f64) -> Self {
        Scalar { kind, parts: [a, 0.0, 0.0, 0.0] }
    }

    pub const fn one(kind: Kind) -> Self {
        Scalar::real(kind, 1.0)
    }

    pub const fn zero(kind: Kind) -> Self {
        Scalar::real(kind, 0.0)
    }

    /// Builds a scalar from 2 (complex) or 4 (quaternion) components.
    pub fn from_components(components: &[f64]) -> Result<Self> {
        match *components {
            [a, b] => Ok(Scalar::complex(a, b)),
            [a, b, c, d] => Ok(Scalar::quaternion(a, b, c, d)),
            _ => Err(Error::UnsupportedDimension(components.len())),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn components(&self) -> &[f64] {
        &self.parts[..self.kind.dim()]
    }

    pub fn re(&self) -> f64 {
        self.parts[0]
    }

    pub fn imag(&self) -> &[f64] {
        &self.parts[1..self.kind.dim()]
    }

    pub fn imag_norm_squared(&self) -> f64 {
        self.imag().iter().map(|x| x * x).sum()
    }

    /// True when every imaginary component is below `tol` in magnitude.
    pub fn is_real(&self, tol: f64) -> bool {
        self.imag().iter().all(|x| x.abs() < tol)
    }

    pub fn is_zero(&self) -> bool {
        self.norm_squared() == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(|x| x.is_finite())
    }

    pub fn norm_squared(&self) -> f64 {
        self.parts.iter().map(|x| x * x).sum()
    }

    pub fn conjugate(&self) -> Scalar {
        let [a, b, c, d] = self.parts;
        Scalar { kind: self.kind, parts: [a, -b, -c, -d] }
    }

    pub fn scale(&self, factor: f64) -> Scalar {
        Scalar { kind: self.kind, parts: self.parts.map(|x| x * factor) }
    }

    fn same_kind(&self, other: &Scalar) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch { left: self.kind, right: other.kind })
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_kind(other)?;
        Ok(Scalar { kind: self.kind, parts: core::array::from_fn(|i| self.parts[i] + other.parts[i]) })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.scale(-1.0))
    }

    /// Product in C or H (Hamilton's convention `ij = k`).
    pub fn multiply(&self, other: &Scalar) -> Result<Scalar> {
        self.same_kind(other)?;
        let [a1, b1, c1, d1] = self.parts;
        let [a2, b2, c2, d2] = other.parts;
        let parts = match self.kind {
            Kind::Complex => [a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, 0.0, 0.0],
            Kind::Quaternion => [
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            ],
        };
        Ok(Scalar { kind: self.kind, parts })
    }

    /// `conj(s) / |s|^2`; fails on zero.
    pub fn inverse(&self) -> Result<Scalar> {
        let n = self.norm_squared();
        if n == 0.0 {
            return Err(Error::SingularScalar);
        }
        Ok(self.conjugate().scale(1.0 / n))
    }

    /// The real matrix through which this scalar acts on R^2 or R^4.
    pub fn embed(&self) -> Matrix {
        let [a, b, c, d] = self.parts;
        match self.kind {
            Kind::Complex => Matrix::from_rows(&[[a, -b], [b, a]]),
            Kind::Quaternion => Matrix::from_rows(&[[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]),
        }
        .expect("embedding rows are square")
    }

    /// Inverse of [`Scalar::embed`]: recovers the scalar when `m` has the
    /// embedding pattern within `tol`, entrywise.
    pub fn from_embedding(m: &Matrix, tol: f64) -> Option<Scalar> {
        let kind = Kind::from_dim(m.dim()).ok()?;
        let col = m.column(0);
        let s = Scalar::from_components(col.as_slice()).ok()?;
        debug_assert_eq!(s.kind, kind);
        ((s.embed() - *m).max_abs() <= tol).then_some(s)
    }
}

impl fmt::Display for Scalar {
    /// Writes `a+bi` or `a+bi+cj+dk`, the syntax accepted on the command line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts[0])?;
        let units = ["i", "j", "k"];
        for (x, unit) in self.imag().iter().zip(units) {
            if x.is_sign_negative() {
                write!(f, "{x}{unit}")?;
            } else {
                write!(f, "+{x}{unit}")?;
            }
        }
        Ok(())
    }
}
