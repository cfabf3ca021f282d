//! Empirical checks on simulated linear forms.
//!
//! Three tests, all deterministic given their seed:
//!
//! * cross-covariance z-scores between `L1` and `L2` (jointly Gaussian forms
//!   are independent iff this vanishes),
//! * a permutation test on the distance covariance of `(L1, L2)`,
//! * a sign-flip test on the energy distance between `(L1, L2)` and
//!   `(L1, -L2)` for conditional symmetry.

use alloc::vec;
use alloc::vec::Vec;

use libm::{erfc, sqrt};
use serde::Serialize;

use crate::engine::forms::LinearForm;
use crate::error::{Error, Result};
use crate::gaussian::GaussianLaw;
use crate::linalg::{Matrix, Vector};
use crate::rng::{shuffle, stream_rng, uniform, NormalSource};

pub const DEFAULT_LEVEL: f64 = 0.01;
pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;
pub const DEFAULT_PERMUTATIONS: usize = 199;
pub const MIN_PERMUTATIONS: usize = 99;
/// Pairwise-distance tests hold `n x n` matrices.
pub const MAX_PAIRWISE_N: usize = 4000;

// Keeps permutation streams apart from sampling streams of the same seed.
const PERMUTATION_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

/// `n` joint realizations of `(L1, L2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSamplePair {
    pub dim: usize,
    pub seed: u64,
    pub l1: Vec<Vector>,
    pub l2: Vec<Vector>,
}

impl FormSamplePair {
    pub fn new(l1: Vec<Vector>, l2: Vec<Vector>, seed: u64) -> Result<Self> {
        if l1.len() != l2.len() {
            return Err(Error::LengthMismatch { expected: l1.len(), found: l2.len() });
        }
        let dim = l1.first().ok_or(Error::InvalidSampleSize(0))?.dim();
        if let Some(bad) = l1.iter().chain(&l2).find(|r| r.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(FormSamplePair { dim, seed, l1, l2 })
    }

    pub fn len(&self) -> usize {
        self.l1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l1.is_empty()
    }

    /// Same sample with every `L2` row shifted by `offset`.
    pub fn shift_l2(&self, offset: &Vector) -> FormSamplePair {
        let l2 = self.l2.iter().map(|r| *r + *offset).collect();
        FormSamplePair { l2, ..self.clone() }
    }
}

/// Draws `xi_j` from `laws` (law `j` on its own stream of `seed`) and
/// evaluates `L1 = sum embed(a_j) xi_j`, `L2 = sum embed(b_j) xi_j`.
pub fn sample_forms(
    laws: &[GaussianLaw],
    alphas: &LinearForm,
    betas: &LinearForm,
    n: usize,
    seed: u64,
) -> Result<FormSamplePair> {
    let count = laws.len();
    for form in [alphas, betas] {
        if form.len() != count {
            return Err(Error::LengthMismatch { expected: count, found: form.len() });
        }
    }
    if alphas.kind() != betas.kind() {
        return Err(Error::KindMismatch { left: alphas.kind(), right: betas.kind() });
    }
    let dim = alphas.kind().dim();
    if let Some(law) = laws.iter().find(|l| l.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: law.dim() });
    }
    if n == 0 {
        return Err(Error::InvalidSampleSize(n));
    }

    let a: Vec<Matrix> = alphas.coefficients().iter().map(|c| c.embed()).collect();
    let b: Vec<Matrix> = betas.coefficients().iter().map(|c| c.embed()).collect();
    let samplers: Vec<_> = laws.iter().map(GaussianLaw::sampler).collect();
    let mut sources: Vec<_> = (0..count as u64).map(|j| NormalSource::from_stream(seed, j)).collect();

    let mut l1 = Vec::with_capacity(n);
    let mut l2 = Vec::with_capacity(n);
    for _ in 0..n {
        let mut r1 = Vector::zeros(dim);
        let mut r2 = Vector::zeros(dim);
        for j in 0..count {
            let xi = samplers[j].draw(&mut sources[j]);
            r1 = r1 + a[j].mul_vec(&xi);
            r2 = r2 + b[j].mul_vec(&xi);
        }
        l1.push(r1);
        l2.push(r2);
    }
    Ok(FormSamplePair { dim, seed, l1, l2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TestVerdict {
    ConsistentWithNull,
    RejectNull,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMethod {
    CrossCovariance,
    DistanceCovariance,
    ConditionalSymmetry,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
    pub seed: u64,
    pub verdict: TestVerdict,
    pub method: TestMethod,
    /// Significance level for permutation tests, `|z|` threshold for the
    /// cross-covariance test.
    #[serde(skip)]
    pub threshold: f64,
}

impl TestResult {
    pub fn rejected(&self) -> bool {
        self.verdict == TestVerdict::RejectNull
    }
}

/// z-scores of every entry of the empirical cross-covariance of `L1` and
/// `L2`, each with a plug-in standard error. Rejects when `max |z|` exceeds
/// `z_threshold`; `statistic` is that maximum and `p_value` its
/// Bonferroni-adjusted two-sided normal tail.
pub fn cross_covariance_test(pair: &FormSamplePair, z_threshold: f64) -> TestResult {
    let z = cross_covariance_z_scores(pair);
    let max_z = z.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let entries = (pair.dim * pair.dim) as f64;
    let p_value = (entries * erfc(max_z / core::f64::consts::SQRT_2)).min(1.0);
    TestResult {
        statistic: max_z,
        p_value,
        n: pair.len(),
        seed: pair.seed,
        verdict: if max_z > z_threshold { TestVerdict::RejectNull } else { TestVerdict::ConsistentWithNull },
        method: TestMethod::CrossCovariance,
        threshold: z_threshold,
    }
}

/// Row-major `dim x dim` z-scores of `cov(L1_k, L2_l)`.
pub fn cross_covariance_z_scores(pair: &FormSamplePair) -> Vec<f64> {
    let d = pair.dim;
    let n = pair.len() as f64;
    let mean = |rows: &[Vector]| rows.iter().fold(Vector::zeros(d), |acc, r| acc + *r).scale(1.0 / n);
    let m1 = mean(&pair.l1);
    let m2 = mean(&pair.l2);

    let mut z = vec![0.0; d * d];
    for k in 0..d {
        for l in 0..d {
            let products = pair.l1.iter().zip(&pair.l2).map(|(x, y)| (x[k] - m1[k]) * (y[l] - m2[l]));
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for w in products {
                sum += w;
                sum_sq += w * w;
            }
            let cov = sum / n;
            let var = (sum_sq / n - cov * cov).max(0.0);
            let se = sqrt(var / n);
            z[k * d + l] = if se > 0.0 {
                cov / se
            } else if cov.abs() <= 1e-300 {
                0.0
            } else {
                f64::INFINITY.copysign(cov)
            };
        }
    }
    z
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PermutationOptions {
    pub permutations: usize,
    pub seed: u64,
    pub level: f64,
}

impl Default for PermutationOptions {
    fn default() -> Self {
        PermutationOptions { permutations: DEFAULT_PERMUTATIONS, seed: 0, level: DEFAULT_LEVEL }
    }
}

impl PermutationOptions {
    pub fn new(permutations: usize, seed: u64) -> Self {
        PermutationOptions { permutations, seed, ..Default::default() }
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.permutations < MIN_PERMUTATIONS {
            return Err(Error::TooFewPermutations { permutations: self.permutations, min: MIN_PERMUTATIONS });
        }
        if n > MAX_PAIRWISE_N {
            return Err(Error::TooManySamples { n, max: MAX_PAIRWISE_N });
        }
        if n < 2 {
            return Err(Error::InvalidSampleSize(n));
        }
        Ok(())
    }

    fn finish(&self, method: TestMethod, statistic: f64, at_least: usize, n: usize) -> TestResult {
        let p_value = (1 + at_least) as f64 / (self.permutations + 1) as f64;
        TestResult {
            statistic,
            p_value,
            n,
            seed: self.seed,
            verdict: if p_value <= self.level { TestVerdict::RejectNull } else { TestVerdict::ConsistentWithNull },
            method,
            threshold: self.level,
        }
    }
}

fn distance(x: &Vector, y: &Vector) -> f64 {
    (*x - *y).norm()
}

fn distance_matrix(rows: &[Vector]) -> Vec<f64> {
    let n = rows.len();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance(&rows[i], &rows[j]);
            out[i * n + j] = d;
            out[j * n + i] = d;
        }
    }
    out
}

/// Permutation test of independence based on the squared sample distance
/// covariance (V-statistic). `statistic` is `n * dCov^2`.
pub fn distance_covariance_test(pair: &FormSamplePair, options: &PermutationOptions) -> Result<TestResult> {
    let n = pair.len();
    options.check(n)?;
    let a = distance_matrix(&pair.l1);
    let b = distance_matrix(&pair.l2);
    let row_sums = |m: &[f64]| -> Vec<f64> { m.chunks_exact(n).map(|r| r.iter().sum()).collect() };
    let ra = row_sums(&a);
    let rb = row_sums(&b);
    let nf = n as f64;
    let mean_a = ra.iter().sum::<f64>() / (nf * nf);
    let mean_b = rb.iter().sum::<f64>() / (nf * nf);

    // dCov^2 = S1 + S2 - 2 S3 with S2 = mean(a) mean(b) fixed under permutation.
    let dcov = |perm: &[u32]| -> f64 {
        let mut s1 = 0.0;
        let mut s3 = 0.0;
        for i in 0..n {
            let pi = perm[i] as usize;
            let row_a = &a[i * n..i * n + i];
            let row_b = &b[pi * n..pi * n + n];
            s1 += gather_dot(row_a, row_b, &perm[..i]);
            s3 += ra[i] * rb[pi];
        }
        2.0 * s1 / (nf * nf) + mean_a * mean_b - 2.0 * s3 / (nf * nf * nf)
    };

    let identity: Vec<u32> = (0..n as u32).collect();
    let observed = dcov(&identity);
    let mut perm = identity.clone();
    let mut at_least = 0;
    for k in 0..options.permutations {
        perm.copy_from_slice(&identity);
        let mut rng = stream_rng(options.seed ^ PERMUTATION_SALT, k as u64);
        shuffle(&mut rng, &mut perm);
        if dcov(&perm) >= observed {
            at_least += 1;
        }
    }
    Ok(options.finish(TestMethod::DistanceCovariance, nf * observed, at_least, n))
}

/// Tests `(L1, L2) =d (L1, -L2)`, i.e. symmetry of the conditional law of
/// `L2` given `L1`.
///
/// The statistic is the two-sample energy distance between the points
/// `z_i = (l1_i, l2_i)` and their reflections `z_i' = (l1_i, -l2_i)`, scaled
/// by `n / 2`. Under the null each pair `(z_i, z_i')` is exchangeable, so the
/// reference distribution swaps each pair with probability 1/2. With signs
/// `e_i = +-1` recording the swaps, the statistic is `e^T K e / n` where
/// `K_ij = |z_i - z_j'| - |z_i - z_j|`.
pub fn conditional_symmetry_test(pair: &FormSamplePair, options: &PermutationOptions) -> Result<TestResult> {
    let n = pair.len();
    options.check(n)?;
    let kernel = symmetry_kernel(pair);
    let quad = |signs: &[f64]| -> f64 { kernel.chunks_exact(n).zip(signs).map(|(row, si)| si * dot(row, signs)).sum() };
    let nf = n as f64;
    let mut signs = vec![1.0; n];
    let observed = quad(&signs);
    let mut at_least = 0;
    for k in 0..options.permutations {
        let mut rng = stream_rng(options.seed ^ PERMUTATION_SALT, k as u64);
        for s in signs.iter_mut() {
            *s = if uniform(&mut rng) < 0.5 { -1.0 } else { 1.0 };
        }
        if quad(&signs) >= observed {
            at_least += 1;
        }
    }
    Ok(options.finish(TestMethod::ConditionalSymmetry, observed / nf, at_least, n))
}

// Independent lanes break the floating-point add dependency chain.
const LANES: usize = 8;

fn dot(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = [0.0; LANES];
    let xs = x.chunks_exact(LANES);
    let ys = y.chunks_exact(LANES);
    let tail: f64 = xs.remainder().iter().zip(ys.remainder()).map(|(a, b)| a * b).sum();
    for (cx, cy) in xs.zip(ys) {
        for l in 0..LANES {
            acc[l] += cx[l] * cy[l];
        }
    }
    acc.iter().sum::<f64>() + tail
}

/// `sum_j x[j] * y[idx[j]]`.
fn gather_dot(x: &[f64], y: &[f64], idx: &[u32]) -> f64 {
    let mut acc = [0.0f64; LANES];
    let xs = x.chunks_exact(LANES);
    let is = idx.chunks_exact(LANES);
    let tail: f64 = xs.remainder().iter().zip(is.remainder()).map(|(&a, &j)| a * y[j as usize]).sum();
    for (cx, ci) in xs.zip(is) {
        for l in 0..LANES {
            acc[l] += cx[l] * y[ci[l] as usize];
        }
    }
    acc.iter().sum::<f64>() + tail
}

fn symmetry_kernel(pair: &FormSamplePair) -> Vec<f64> {
    let n = pair.len();
    let d = pair.dim;
    let mut k = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let (mut same, mut cross) = (0.0, 0.0);
            for c in 0..d {
                let dx = pair.l1[i][c] - pair.l1[j][c];
                same += dx * dx;
                cross += dx * dx;
                let dy = pair.l2[i][c] - pair.l2[j][c];
                let sy = pair.l2[i][c] + pair.l2[j][c];
                same += dy * dy;
                cross += sy * sy;
            }
            let v = sqrt(cross) - sqrt(same);
            k[i * n + j] = v;
            k[j * n + i] = v;
        }
    }
    k
}
