//! Classification and residual maps over a grid of coefficients.
//!
//! Each row takes the preset shape `B` and the PSD matrix `A` closest to
//! `-B embed(conj alpha)` (its PSD projection), then reports how far
//! `A + B embed(conj alpha)` is from zero and the residual of the
//! corresponding laws. Both vanish exactly on the negative real axis.

use clap::ValueEnum;
use hyperchar_core::engine::{
    classify_heyde, classify_skitovich_darmois, independence_residual, preset_shape, Grid, LinearForm, VerdictKind,
};
use hyperchar_core::monte_carlo::{cross_covariance_test, sample_forms, DEFAULT_Z_THRESHOLD};
use hyperchar_core::{GaussianLaw, Kind, Scalar};
use serde::Serialize;

use crate::error::CliError;

pub const CSV_HEADER: [&str; 9] =
    ["re", "im1", "im2", "im3", "sd_verdict", "heyde_verdict", "criterion_norm", "residual", "p_value"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepCheck {
    Classify,
    Residual,
    Montecarlo,
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub kind: Kind,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub checks: Vec<SweepCheck>,
    pub seed: u64,
    /// Sample size for the Monte Carlo check.
    pub n: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(CliError::Usage(format!("step must be positive, got {}", self.step)));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(CliError::Usage(format!("invalid grid range {}:{}", self.lo, self.hi)));
        }
        Ok(())
    }

    /// Grid values `lo + k * step` up to `hi`, with a little slack for
    /// rounding; values within rounding of zero are snapped to zero.
    pub fn axis(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| self.lo + k as f64 * self.step)
            .map(|x| if x.abs() < 1e-9 * self.step { 0.0 } else { x })
            .collect()
    }

    /// Every nonzero grid coefficient, last component varying fastest.
    pub fn coefficients(&self) -> Vec<Scalar> {
        let axis = self.axis();
        let dim = self.kind.dim();
        let mut out = Vec::new();
        let mut index = vec![0usize; dim];
        loop {
            let parts: Vec<f64> = index.iter().map(|&i| axis[i]).collect();
            if parts.iter().any(|&x| x != 0.0) {
                out.push(Scalar::from_components(&parts).expect("dimension matches kind"));
            }
            // Odometer increment.
            let mut slot = dim;
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                index[slot] += 1;
                if index[slot] < axis.len() {
                    break;
                }
                index[slot] = 0;
            }
        }
    }

    fn has(&self, check: SweepCheck) -> bool {
        self.checks.contains(&check)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub re: f64,
    pub im1: f64,
    pub im2: f64,
    pub im3: f64,
    pub sd_verdict: Option<VerdictKind>,
    pub heyde_verdict: Option<VerdictKind>,
    pub criterion_norm: Option<f64>,
    pub residual: Option<f64>,
    pub p_value: Option<f64>,
}

pub fn run(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    let b = preset_shape(spec.kind);
    let grid = Grid::default_for(spec.kind.dim())?;
    let first = LinearForm::sum(spec.kind, 2)?;
    spec.coefficients()
        .into_iter()
        .map(|alpha| {
            let c = alpha.components();
            let mut row = SweepRow {
                re: c[0],
                im1: c[1],
                im2: c.get(2).copied().unwrap_or(0.0),
                im3: c.get(3).copied().unwrap_or(0.0),
                sd_verdict: None,
                heyde_verdict: None,
                criterion_norm: None,
                residual: None,
                p_value: None,
            };
            if spec.has(SweepCheck::Classify) {
                row.sd_verdict = Some(classify_skitovich_darmois(&alpha)?.verdict);
                row.heyde_verdict = Some(classify_heyde(&alpha)?.verdict);
            }
            let wants_laws = spec.has(SweepCheck::Residual) || spec.has(SweepCheck::Montecarlo);
            if wants_laws {
                let e = alpha.conjugate().embed();
                let a = (-(b * e)).symmetric_part().psd_projection();
                let laws = [GaussianLaw::centered(a)?, GaussianLaw::centered(b)?];
                let second = LinearForm::with_alpha(alpha)?;
                if spec.has(SweepCheck::Residual) {
                    row.criterion_norm = Some((a + b * e).frobenius_norm());
                    row.residual = Some(independence_residual(&laws, &first, &second, &grid)?);
                }
                if spec.has(SweepCheck::Montecarlo) {
                    let pair = sample_forms(&laws, &first, &second, spec.n, spec.seed)?;
                    row.p_value = Some(cross_covariance_test(&pair, DEFAULT_Z_THRESHOLD).p_value);
                }
            }
            Ok(row)
        })
        .collect()
}

fn cell<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn verdict_name(v: VerdictKind) -> &'static str {
    match v {
        VerdictKind::DegenerateForced => "DegenerateForced",
        VerdictKind::CounterexampleExists => "CounterexampleExists",
        VerdictKind::Excluded => "Excluded",
    }
}

pub fn write_csv<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.re.to_string(),
            r.im1.to_string(),
            r.im2.to_string(),
            r.im3.to_string(),
            cell(r.sd_verdict.map(verdict_name)),
            cell(r.heyde_verdict.map(verdict_name)),
            cell(r.criterion_norm),
            cell(r.residual),
            cell(r.p_value),
        ])?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(())
}
