//! Report builders behind each subcommand. Every report is plain data so the
//! binary only has to serialize it and pick an exit code.

use clap::ValueEnum;
use hyperchar_core::engine::{
    classify_heyde, classify_skitovich_darmois, construct_heyde_counterexample, construct_proposition1,
    construct_sd_counterexample, gaussian_independence_criterion, gaussian_symmetry_criterion, independence_residual,
    narrow_sense_constraint, preset_shape, symmetry_residual, Grid, LinearForm, VerdictKind, CRITERION_TOL, NARROW_TOL,
    RESIDUAL_TOL,
};
use hyperchar_core::monte_carlo::{
    conditional_symmetry_test, cross_covariance_test, distance_covariance_test, sample_forms, FormSamplePair,
    PermutationOptions, TestResult, DEFAULT_Z_THRESHOLD,
};
use hyperchar_core::{GaussianLaw, Kind, Matrix, Scalar};
use serde::Serialize;

use crate::error::CliError;

/// Permutation tests cost `O(n^2)` per permutation, so they run on at most
/// this many leading rows of the sample.
pub const PAIRWISE_CAP: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Independence of `xi_1 + xi_2` and `xi_1 + alpha xi_2`.
    Sd,
    /// Symmetry of the conditional law of `xi_1 + alpha xi_2` given `xi_1 + xi_2`.
    Heyde,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub alpha: Scalar,
    pub theorem: Theorem,
    pub verdict: VerdictKind,
    pub rationale: &'static str,
}

pub fn classify(alpha: Scalar, theorem: Theorem) -> Result<ClassifyReport, CliError> {
    let v = match theorem {
        Theorem::Sd => classify_skitovich_darmois(&alpha)?,
        Theorem::Heyde => classify_heyde(&alpha)?,
    };
    Ok(ClassifyReport { alpha, theorem, verdict: v.verdict, rationale: v.rationale })
}

/// `B` from a file, or the preset nonscalar shape for the kind.
pub fn shape_or_preset(shape: Option<Matrix>, kind: Kind) -> Result<Matrix, CliError> {
    match shape {
        Some(m) if m.dim() != kind.dim() => {
            Err(hyperchar_core::Error::DimensionMismatch { expected: kind.dim(), found: m.dim() }.into())
        }
        Some(m) => Ok(m),
        None => Ok(preset_shape(kind)),
    }
}

fn two_forms(alpha: Scalar) -> (LinearForm, LinearForm) {
    (
        LinearForm::sum(alpha.kind(), 2).expect("two summands"),
        LinearForm::with_alpha(alpha).expect("constructors reject alpha = 0 earlier"),
    )
}

#[derive(Debug, Serialize)]
pub struct CounterexampleReport {
    pub alpha: Scalar,
    pub mode: Theorem,
    /// Frobenius norm of the Gaussian criterion (shape and mean parts).
    pub criterion_norm: f64,
    /// Largest characteristic-function residual on the default grid.
    pub residual: f64,
    pub narrow_sense: [bool; 2],
    pub law1: GaussianLaw,
    pub law2: GaussianLaw,
}

pub fn counterexample(alpha: Scalar, mode: Theorem, shape: Option<Matrix>) -> Result<CounterexampleReport, CliError> {
    let b = shape_or_preset(shape, alpha.kind())?;
    let grid = Grid::default_for(alpha.kind().dim())?;
    let (law1, law2, criterion_norm, residual) = match mode {
        Theorem::Sd => {
            let (l1, l2) = construct_sd_counterexample(&alpha, &b)?;
            let (first, second) = two_forms(alpha);
            let laws = [l1, l2];
            let m = gaussian_independence_criterion(&laws, &first, &second)?;
            let r = independence_residual(&laws, &first, &second, &grid)?;
            let [l1, l2] = laws;
            (l1, l2, m.frobenius_norm(), r)
        }
        Theorem::Heyde => {
            let (l1, l2) = construct_heyde_counterexample(&alpha, &b)?;
            let c = gaussian_symmetry_criterion(&l1, &l2, &alpha)?;
            let r = symmetry_residual(&l1, &l2, &alpha, &grid)?;
            let norm = c.shape.frobenius_norm().hypot(c.mean.norm());
            (l1, l2, norm, r)
        }
    };
    Ok(CounterexampleReport {
        alpha,
        mode,
        criterion_norm,
        residual,
        narrow_sense: [law1.is_narrow_sense(NARROW_TOL), law2.is_narrow_sense(NARROW_TOL)],
        law1,
        law2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Sd,
    Heyde,
    Prop1,
}

/// One analytic check: `value` must be below `limit`, or above it when
/// `above` is set.
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub above: bool,
    pub passed: bool,
}

impl Check {
    fn below(name: &'static str, value: f64, limit: f64) -> Self {
        Check { name, value, limit, above: false, passed: value < limit }
    }

    fn above(name: &'static str, value: f64, limit: f64) -> Self {
        Check { name, value, limit, above: true, passed: value > limit }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Scalar>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sigmas: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub betas: Vec<Scalar>,
    pub checks: Vec<Check>,
    pub tests: Vec<TestResult>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: usize,
    pub seed: u64,
    pub permutations: usize,
    pub z_threshold: f64,
    pub level: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 200_000,
            seed: 0,
            permutations: hyperchar_core::monte_carlo::DEFAULT_PERMUTATIONS,
            z_threshold: DEFAULT_Z_THRESHOLD,
            level: hyperchar_core::monte_carlo::DEFAULT_LEVEL,
        }
    }
}

impl VerifyOptions {
    fn permutation(&self) -> PermutationOptions {
        PermutationOptions { permutations: self.permutations, seed: self.seed, level: self.level }
    }
}

/// Smallest distance of a shape from the scalar matrices, in Frobenius norm.
fn scalar_defect(shape: &Matrix) -> f64 {
    let d = shape.dim() as f64;
    (*shape - Matrix::scalar(shape.dim(), shape.trace() / d)).frobenius_norm()
}

fn leading(pair: &FormSamplePair, m: usize) -> Result<FormSamplePair, CliError> {
    Ok(FormSamplePair::new(pair.l1[..m].to_vec(), pair.l2[..m].to_vec(), pair.seed)?)
}

/// Cross-covariance on all `n` rows and distance covariance on the leading
/// rows.
fn independence_tests(
    laws: &[GaussianLaw],
    first: &LinearForm,
    second: &LinearForm,
    options: &VerifyOptions,
) -> Result<Vec<TestResult>, CliError> {
    let pair = sample_forms(laws, first, second, options.n, options.seed)?;
    let cross = cross_covariance_test(&pair, options.z_threshold);
    let head = leading(&pair, options.n.min(PAIRWISE_CAP))?;
    let dcov = distance_covariance_test(&head, &options.permutation())?;
    Ok(vec![cross, dcov])
}

fn finish(
    mode: VerifyMode,
    alpha: Option<Scalar>,
    sigmas: Vec<f64>,
    betas: Vec<Scalar>,
    checks: Vec<Check>,
    tests: Vec<TestResult>,
) -> VerifyReport {
    let passed = checks.iter().all(|c| c.passed) && tests.iter().all(|t| !t.rejected());
    VerifyReport { mode, alpha, sigmas, betas, checks, tests, passed }
}

pub fn verify_sd(alpha: Scalar, shape: Option<Matrix>, options: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let b = shape_or_preset(shape, alpha.kind())?;
    let (l1, l2) = construct_sd_counterexample(&alpha, &b)?;
    let (first, second) = two_forms(alpha);
    let laws = [l1, l2];
    let grid = Grid::default_for(alpha.kind().dim())?;
    let checks = vec![
        Check::below(
            "criterion_norm",
            gaussian_independence_criterion(&laws, &first, &second)?.frobenius_norm(),
            CRITERION_TOL,
        ),
        Check::below("residual", independence_residual(&laws, &first, &second, &grid)?, RESIDUAL_TOL),
        Check::above("scalar_defect_law1", scalar_defect(laws[0].shape()), NARROW_TOL),
        Check::above("scalar_defect_law2", scalar_defect(laws[1].shape()), NARROW_TOL),
    ];
    let tests = independence_tests(&laws, &first, &second, options)?;
    Ok(finish(VerifyMode::Sd, Some(alpha), Vec::new(), Vec::new(), checks, tests))
}

pub fn verify_heyde(alpha: Scalar, shape: Option<Matrix>, options: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let b = shape_or_preset(shape, alpha.kind())?;
    let (l1, l2) = construct_heyde_counterexample(&alpha, &b)?;
    let grid = Grid::default_for(alpha.kind().dim())?;
    let c = gaussian_symmetry_criterion(&l1, &l2, &alpha)?;
    let checks = vec![
        Check::below("criterion_norm", c.shape.frobenius_norm().hypot(c.mean.norm()), CRITERION_TOL),
        Check::below("residual", symmetry_residual(&l1, &l2, &alpha, &grid)?, RESIDUAL_TOL),
        Check::above("scalar_defect_law1", scalar_defect(l1.shape()), NARROW_TOL),
        Check::above("scalar_defect_law2", scalar_defect(l2.shape()), NARROW_TOL),
    ];
    let (first, second) = two_forms(alpha);
    let pair = sample_forms(&[l1, l2], &first, &second, options.n.min(PAIRWISE_CAP), options.seed)?;
    let tests = vec![conditional_symmetry_test(&pair, &options.permutation())?];
    Ok(finish(VerifyMode::Heyde, Some(alpha), Vec::new(), Vec::new(), checks, tests))
}

pub fn verify_prop1(
    sigmas: Vec<f64>,
    betas: Vec<Scalar>,
    shape: Option<Matrix>,
    options: &VerifyOptions,
) -> Result<VerifyReport, CliError> {
    let form = LinearForm::new(betas.clone())?;
    let kind = form.kind();
    let a = shape_or_preset(shape, kind)?;
    let laws = construct_proposition1(&sigmas, &form, &a)?;
    let ones = LinearForm::sum(kind, laws.len())?;
    let grid = Grid::default_for(kind.dim())?;
    let mut checks = vec![
        Check::below("constraint_norm", narrow_sense_constraint(&sigmas, &form).frobenius_norm(), CRITERION_TOL),
        Check::below(
            "criterion_norm",
            gaussian_independence_criterion(&laws, &ones, &form)?.frobenius_norm(),
            CRITERION_TOL,
        ),
        Check::below("residual", independence_residual(&laws, &ones, &form, &grid)?, RESIDUAL_TOL),
    ];
    checks.push(Check::above("scalar_defect", scalar_defect(&a), NARROW_TOL));
    let tests = independence_tests(&laws, &ones, &form, options)?;
    Ok(finish(VerifyMode::Prop1, None, sigmas, betas, checks, tests))
}
