//! Analytic side: characteristic-function residuals, Gaussian matrix
//! criteria, coefficient classification and counterexample constructors.

pub mod classify;
pub mod construct;
pub mod criterion;
pub mod forms;
pub mod residual;

pub use classify::{
    classify_heyde, classify_skitovich_darmois, heyde_beta_closed_form, heyde_p_forms, heyde_reduction,
    heyde_to_sd_forms, solve_psd_constraint, ConstraintKind, ConstraintSolution, HeydeCase, HeydeReduction, Verdict,
    VerdictKind,
};
pub use construct::{
    construct_heyde_counterexample, construct_proposition1, construct_sd_counterexample, narrow_sense_constraint,
    preset_shape, NARROW_TOL,
};
pub use criterion::{gaussian_independence_criterion, gaussian_symmetry_criterion, SymmetryCriterion, CRITERION_TOL};
pub use forms::LinearForm;
pub use residual::{independence_residual, symmetry_residual, Grid};

/// Residuals below this count as an exact identity; characters are bounded by 1.
pub const RESIDUAL_TOL: f64 = 1e-12;
