//! Which coefficients force degeneracy and which admit non-narrow Gaussian
//! counterexamples.
//!
//! For Gaussian summands, independence of `xi_1 + xi_2` and
//! `xi_1 + alpha xi_2` is `A + B embed(conj alpha) = 0` with `A`, `B`
//! symmetric PSD. Writing `embed(conj alpha) = aI + K` with `K` skew,
//! symmetry of `B K` forces `(imaginary part) * trace(B) = 0`. A nonzero
//! imaginary part therefore gives `trace(B) = 0`, hence `B = 0` and `A = 0`.
//! A real `alpha = a` leaves `A = -aB`, which is PSD for nonzero `B` only
//! when `a < 0`.

use serde::Serialize;

use crate::algebra::{Kind, Scalar, REAL_AXIS_TOL};
use crate::engine::forms::LinearForm;
use crate::error::{Error, Result};

/// Tolerance for `|alpha| = 1` in the Heyde reduction.
pub const UNIT_NORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    DegenerateForced,
    CounterexampleExists,
    Excluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub rationale: &'static str,
}

impl Verdict {
    const fn new(verdict: VerdictKind, rationale: &'static str) -> Self {
        Verdict { verdict, rationale }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConstraintKind {
    OnlyZero,
    NegativeScalingFamily,
}

/// Symmetric PSD solutions `(A, B)` of `A + B embed(conj alpha) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstraintSolution {
    pub kind: ConstraintKind,
    /// `-a` when the solutions are `{(-aB, B) : B PSD}`.
    pub scaling: Option<f64>,
    pub rationale: &'static str,
}

fn nonzero(alpha: &Scalar) -> Result<()> {
    if alpha.is_zero() {
        Err(Error::SingularScalar)
    } else if !alpha.is_finite() {
        Err(Error::NonFinite)
    } else {
        Ok(())
    }
}

fn label(kind: Kind, complex: &'static str, quaternion: &'static str) -> &'static str {
    match kind {
        Kind::Complex => complex,
        Kind::Quaternion => quaternion,
    }
}

pub fn solve_psd_constraint(alpha: &Scalar) -> Result<ConstraintSolution> {
    nonzero(alpha)?;
    let kind = alpha.kind();
    if !alpha.is_real(REAL_AXIS_TOL) {
        return Ok(ConstraintSolution {
            kind: ConstraintKind::OnlyZero,
            scaling: None,
            rationale: label(
                kind,
                "symmetry of B*conj(alpha) gives b*trace(B) = 0 with b != 0, so B = 0 and A = 0",
                "symmetry of B*conj(alpha) gives (b,c,d)*trace(B) = 0 with (b,c,d) != 0, so B = 0 and A = 0",
            ),
        });
    }
    let a = alpha.re();
    if a > 0.0 {
        Ok(ConstraintSolution {
            kind: ConstraintKind::OnlyZero,
            scaling: None,
            rationale: "real alpha > 0: A = -aB with A, B PSD forces A = B = 0",
        })
    } else {
        Ok(ConstraintSolution {
            kind: ConstraintKind::NegativeScalingFamily,
            scaling: Some(-a),
            rationale: "real alpha < 0: A = -aB is PSD for every PSD B",
        })
    }
}

/// Independence of `xi_1 + xi_2` and `xi_1 + alpha xi_2`.
pub fn classify_skitovich_darmois(alpha: &Scalar) -> Result<Verdict> {
    nonzero(alpha)?;
    let kind = alpha.kind();
    if !alpha.is_real(REAL_AXIS_TOL) {
        return Ok(Verdict::new(
            VerdictKind::DegenerateForced,
            label(
                kind,
                "Skitovich-Darmois (complex), case b != 0: independent forms force degenerate summands",
                "Skitovich-Darmois (quaternion), case nonzero imaginary part: independent forms force degenerate summands",
            ),
        ));
    }
    let a = alpha.re();
    if a == 1.0 {
        return Ok(Verdict::new(
            VerdictKind::DegenerateForced,
            "Skitovich-Darmois, case alpha = 1: a form independent of itself is degenerate",
        ));
    }
    if a > 0.0 {
        Ok(Verdict::new(
            VerdictKind::DegenerateForced,
            label(
                kind,
                "Skitovich-Darmois (complex), case b = 0 and a > 0: independent forms force degenerate summands",
                "Skitovich-Darmois (quaternion), case real alpha with a > 0: independent forms force degenerate summands",
            ),
        ))
    } else {
        Ok(Verdict::new(
            VerdictKind::CounterexampleExists,
            label(
                kind,
                "Skitovich-Darmois (complex), case b = 0 and a < 0: wide-sense, non-narrow Gaussian counterexample A = -aB",
                "Skitovich-Darmois (quaternion), case real alpha with a < 0: wide-sense, non-narrow Gaussian counterexample A = -aB",
            ),
        ))
    }
}

/// Symmetry of the conditional law of `xi_1 + alpha xi_2` given `xi_1 + xi_2`.
pub fn classify_heyde(alpha: &Scalar) -> Result<Verdict> {
    nonzero(alpha)?;
    let kind = alpha.kind();
    if is_minus_one(alpha) {
        return Ok(Verdict::new(VerdictKind::Excluded, "Heyde: alpha = -1 is outside the hypotheses"));
    }
    if !alpha.is_real(REAL_AXIS_TOL) {
        return Ok(Verdict::new(
            VerdictKind::DegenerateForced,
            label(
                kind,
                "Heyde (complex), case b != 0: conditional symmetry forces degenerate summands",
                "Heyde (quaternion), case nonzero imaginary part: conditional symmetry forces degenerate summands",
            ),
        ));
    }
    if alpha.re() > 0.0 {
        Ok(Verdict::new(
            VerdictKind::DegenerateForced,
            label(
                kind,
                "Heyde (complex), case b = 0 and a > 0: conditional symmetry forces degenerate summands",
                "Heyde (quaternion), case real alpha with a > 0: conditional symmetry forces degenerate summands",
            ),
        ))
    } else {
        Ok(Verdict::new(
            VerdictKind::CounterexampleExists,
            label(
                kind,
                "Heyde (complex), case b = 0 and a < 0: wide-sense, non-narrow Gaussian counterexample A = -aB",
                "Heyde (quaternion), case real alpha with a < 0: wide-sense, non-narrow Gaussian counterexample A = -aB",
            ),
        ))
    }
}

fn is_minus_one(alpha: &Scalar) -> bool {
    alpha.is_real(REAL_AXIS_TOL) && (alpha.re() + 1.0).abs() < REAL_AXIS_TOL
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HeydeCase {
    /// Nonzero imaginary part and `|alpha| != 1`: `beta` is not real.
    A,
    /// `|alpha| = 1`, not real: `beta` is real and positive.
    B,
    /// Real `alpha`: `beta` is real with the sign of `alpha`.
    C,
}

/// `beta = (1 + alpha)^2 / (4 alpha)`, the coefficient of the independence
/// problem that conditional symmetry reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeydeReduction {
    pub alpha: Scalar,
    pub beta: Scalar,
    /// Real part of `beta`.
    pub p: f64,
    /// Euclidean norm of the imaginary part of `beta`.
    pub q: f64,
    pub case: HeydeCase,
}

impl HeydeReduction {
    /// Whether the case statement about `(p, q)` holds for this reduction.
    pub fn statement_holds(&self) -> bool {
        let q_zero = self.beta.is_real(REAL_AXIS_TOL);
        match self.case {
            HeydeCase::A => !q_zero,
            HeydeCase::B => q_zero && self.p > 0.0,
            HeydeCase::C => q_zero && self.p.signum() == self.alpha.re().signum() && self.p != 0.0,
        }
    }
}

pub fn heyde_reduction(alpha: &Scalar) -> Result<HeydeReduction> {
    nonzero(alpha)?;
    if is_minus_one(alpha) {
        return Err(Error::Excluded { reason: "alpha = -1" });
    }
    let kind = alpha.kind();
    let one = Scalar::one(kind);
    let one_plus = one.add(alpha)?;
    let beta = one_plus.multiply(&one_plus)?.multiply(&alpha.scale(4.0).inverse()?)?;

    let is_real = alpha.is_real(REAL_AXIS_TOL);
    let unit = (alpha.norm_squared() - 1.0).abs() < UNIT_NORM_TOL;
    let case = if is_real {
        HeydeCase::C
    } else if unit {
        HeydeCase::B
    } else {
        HeydeCase::A
    };
    Ok(HeydeReduction { alpha: *alpha, beta, p: beta.re(), q: libm::sqrt(beta.imag_norm_squared()), case })
}

/// Closed form of `beta`: real part `(a + 2 + a/|alpha|^2) / 4`, imaginary
/// part `imag(alpha) (1 - 1/|alpha|^2) / 4`.
pub fn heyde_beta_closed_form(alpha: &Scalar) -> Result<Scalar> {
    nonzero(alpha)?;
    let n = alpha.norm_squared();
    let a = alpha.re();
    let mut parts = [0.0; 4];
    parts[0] = 0.25 * (a + 2.0 + a / n);
    for (dst, x) in parts[1..].iter_mut().zip(alpha.imag()) {
        *dst = 0.25 * x * (1.0 - 1.0 / n);
    }
    Scalar::from_components(&parts[..alpha.kind().dim()])
}

/// The forms `M1 = (1+alpha) xi_1 + 2alpha xi_2`, `M2 = 2 xi_1 + (1+alpha) xi_2`
/// that are independent whenever the conditional law of `xi_1 + alpha xi_2`
/// given `xi_1 + xi_2` is symmetric.
pub fn heyde_to_sd_forms(alpha: &Scalar) -> Result<(LinearForm, LinearForm)> {
    nonzero(alpha)?;
    let kind = alpha.kind();
    let one_plus = Scalar::one(kind).add(alpha)?;
    let two = Scalar::real(kind, 2.0);
    let m1 = LinearForm::pair(one_plus, alpha.scale(2.0))?;
    let m2 = LinearForm::pair(two, one_plus)?;
    Ok((m1, m2))
}

/// Rewrites the Heyde forms in `xi'_1 = (1+alpha) xi_1`, `xi'_2 = 2alpha xi_2`
/// and normalizes the second to lead with 1, giving `(1, 1)` and `(1, beta)`.
pub fn heyde_p_forms(alpha: &Scalar) -> Result<(LinearForm, LinearForm)> {
    let (m1, m2) = heyde_to_sd_forms(alpha)?;
    let kind = alpha.kind();
    let scalings = [Scalar::one(kind).add(alpha)?, alpha.scale(2.0)];
    let n1 = m1.substitute(&scalings)?;
    let n2 = m2.substitute(&scalings)?;
    let lead = n2.coefficients()[0].inverse()?;
    let p2 = n2.left_scale(&lead)?;
    let lead1 = n1.coefficients()[0].inverse()?;
    Ok((n1.left_scale(&lead1)?, p2))
}
