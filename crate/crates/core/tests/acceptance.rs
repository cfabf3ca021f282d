//! Acceptance gate: each criterion prints one PASS/FAIL line with its
//! runtime against the budget, and the process exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use common::{hamilton, symmetric_commutant_basis, Draws};
use hyperchar_core::engine::{
    classify_heyde, classify_skitovich_darmois, construct_heyde_counterexample, construct_proposition1,
    construct_sd_counterexample, gaussian_independence_criterion, heyde_reduction, independence_residual,
    narrow_sense_constraint, preset_shape, solve_psd_constraint, symmetry_residual, ConstraintKind, Grid, HeydeCase,
    LinearForm, NARROW_TOL, RESIDUAL_TOL,
};
use hyperchar_core::monte_carlo::{
    conditional_symmetry_test, cross_covariance_test, distance_covariance_test, sample_forms, PermutationOptions,
};
use hyperchar_core::{GaussianLaw, Kind, Matrix, Scalar, Vector};

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "embedding homomorphism", budget: Duration::from_secs(1), run: homomorphism },
        Criterion {
            name: "rigidity of nonreal and positive coefficients",
            budget: Duration::from_secs(5),
            run: rigidity,
        },
        Criterion { name: "counterexample exactness", budget: Duration::from_secs(5), run: counterexample_exactness },
        Criterion { name: "Monte Carlo independence", budget: Duration::from_secs(120), run: monte_carlo_independence },
        Criterion { name: "Heyde reduction chain", budget: Duration::from_secs(1), run: heyde_chain },
        Criterion { name: "Heyde counterexample", budget: Duration::from_secs(60), run: heyde_counterexample },
        Criterion { name: "narrow-sense cancellation laws", budget: Duration::from_secs(5), run: cancellation_laws },
        Criterion { name: "criterion-oracle equivalence", budget: Duration::from_secs(30), run: criterion_equivalence },
    ];

    // Optional arguments select criteria by number, e.g. `-- 4 6`.
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    let mut ran = 0;
    for (index, criterion) in criteria.iter().enumerate() {
        if !selected.is_empty() && !selected.contains(&(index + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = (criterion.run)();
        let elapsed = start.elapsed();
        let timing = format!("{:.2}s / {}s", elapsed.as_secs_f64(), criterion.budget.as_secs());
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= criterion.budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("over runtime budget; {detail}")),
            Err(detail) => ("FAIL", detail),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} [{}] {} ({timing}): {detail}", index + 1, criterion.name);
    }
    println!("{} of {ran} criteria passed", ran - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn c(a: f64) -> Scalar {
    Scalar::real(Kind::Complex, a)
}

fn sd_forms(alpha: Scalar) -> (LinearForm, LinearForm) {
    (LinearForm::sum(alpha.kind(), 2).unwrap(), LinearForm::with_alpha(alpha).unwrap())
}

fn homomorphism() -> Outcome {
    let mut draws = Draws::new(1);
    let mut worst: f64 = 0.0;
    for kind in [Kind::Complex, Kind::Quaternion] {
        for _ in 0..1000 {
            let s = draws.scalar(kind);
            let t = draws.scalar(kind);
            let product = s.multiply(&t).map_err(|e| e.to_string())?;
            let direct = hamilton(s.components(), t.components());
            ensure(product.components().iter().zip(direct).all(|(x, y)| (x - y).abs() < 1e-12), || {
                format!("product of {s} and {t} disagrees with the Hamilton formula")
            })?;
            let err = (product.embed() - s.embed() * t.embed()).max_abs();
            worst = worst.max(err);
        }
    }
    ensure(worst < 1e-12, || format!("max entrywise error {worst:e}"))?;
    Ok(format!("2000 pairs, max entrywise error {worst:.2e}"))
}

fn rigidity() -> Outcome {
    let mut draws = Draws::new(2);
    let mut checked_b = 0;
    for kind in [Kind::Complex, Kind::Quaternion] {
        let dim = kind.dim();
        for _ in 0..1000 {
            let alpha = draws.nonreal_scalar(kind, 1e-3);
            let e = alpha.conjugate().embed();
            // Every symmetric B with B*embed(conj alpha) symmetric has zero
            // trace, so the only PSD one is B = 0.
            for basis in symmetric_commutant_basis(&e) {
                let scale = basis.max_abs();
                ensure(basis.trace().abs() <= 1e-9 * scale, || {
                    format!("alpha = {alpha}: symmetric solution with trace {}", basis.trace())
                })?;
            }
            let solution = solve_psd_constraint(&alpha).map_err(|e| e.to_string())?;
            ensure(solution.kind == ConstraintKind::OnlyZero, || format!("alpha = {alpha}: {:?}", solution.kind))?;

            let b = draws.psd(dim, 1.0);
            let skew = (b * e).skew_part().frobenius_norm();
            ensure(skew > 1e-12 * b.frobenius_norm() * alpha.imag_norm_squared().sqrt(), || {
                format!("alpha = {alpha}: PSD B with symmetric B*conj(alpha)")
            })?;
            checked_b += 1;

            let a = draws.uniform(0.01, 5.0);
            let positive = Scalar::real(kind, a);
            let solution = solve_psd_constraint(&positive).map_err(|e| e.to_string())?;
            ensure(solution.kind == ConstraintKind::OnlyZero, || format!("alpha = {a}: {:?}", solution.kind))?;
            let min = b.scale(-a).symmetric_eigen().min_value();
            ensure(min < 0.0, || format!("alpha = {a}: -aB is PSD"))?;
        }
    }
    Ok(format!("2000 nonreal alpha, {checked_b} PSD B, 2000 positive real alpha"))
}

fn sd_constructions() -> Vec<(Scalar, Vec<GaussianLaw>)> {
    let mut out: Vec<_> = [-0.5, -1.0, -2.0]
        .into_iter()
        .map(|a| {
            let (l1, l2) = construct_sd_counterexample(&c(a), &preset_shape(Kind::Complex)).unwrap();
            (c(a), vec![l1, l2])
        })
        .collect();
    let q = Scalar::real(Kind::Quaternion, -2.0);
    let (l1, l2) = construct_sd_counterexample(&q, &preset_shape(Kind::Quaternion)).unwrap();
    out.push((q, vec![l1, l2]));
    out
}

fn counterexample_exactness() -> Outcome {
    let mut worst: f64 = 0.0;
    for (alpha, laws) in sd_constructions() {
        let grid = Grid::default_for(alpha.kind().dim()).map_err(|e| e.to_string())?;
        let (first, second) = sd_forms(alpha);
        let r = independence_residual(&laws, &first, &second, &grid).map_err(|e| e.to_string())?;
        ensure(r < RESIDUAL_TOL, || format!("alpha = {alpha}: residual {r:e}"))?;
        ensure(laws.iter().all(|l| !l.is_narrow_sense(NARROW_TOL)), || {
            format!("alpha = {alpha}: a constructed law is narrow-sense")
        })?;
        worst = worst.max(r);
    }
    Ok(format!("4 constructions, max residual {worst:.2e}"))
}

/// Runs `check` on seeds `0..count` across the available cores and counts
/// the seeds for which it returns true.
fn count_seeds<F>(count: u64, check: F) -> Result<usize, String>
where
    F: Fn(u64) -> Result<bool, String> + Sync,
{
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(count as usize);
    let next = AtomicU64::new(0);
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut hits = 0;
                    loop {
                        let seed = next.fetch_add(1, Ordering::Relaxed);
                        if seed >= count {
                            return Ok(hits);
                        }
                        if check(seed)? {
                            hits += 1;
                        }
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}

fn monte_carlo_independence() -> Outcome {
    let mut lines = Vec::new();
    for (alpha, laws) in sd_constructions() {
        let (first, second) = sd_forms(alpha);
        let cross_ok = count_seeds(100, |seed| {
            let pair = sample_forms(&laws, &first, &second, 200_000, seed).map_err(|e| e.to_string())?;
            Ok(!cross_covariance_test(&pair, 4.0).rejected())
        })?;
        let dcov_ok = count_seeds(100, |seed| {
            let pair = sample_forms(&laws, &first, &second, 2000, seed).map_err(|e| e.to_string())?;
            let result =
                distance_covariance_test(&pair, &PermutationOptions::new(199, seed)).map_err(|e| e.to_string())?;
            Ok(result.p_value > 0.01)
        })?;
        ensure(cross_ok >= 99, || format!("alpha = {alpha}: cross-covariance accepted {cross_ok}/100"))?;
        ensure(dcov_ok >= 95, || format!("alpha = {alpha}: distance covariance accepted {dcov_ok}/100"))?;
        lines.push(format!("{alpha}: {cross_ok}/100, {dcov_ok}/100"));
    }
    Ok(lines.join("; "))
}

fn heyde_chain() -> Outcome {
    let mut draws = Draws::new(5);
    let mut counts = [0usize; 3];
    for i in 0..1000 {
        let kind = if i % 2 == 0 { Kind::Complex } else { Kind::Quaternion };
        let alpha = match i % 3 {
            0 => draws.nonreal_scalar(kind, 1e-3),
            1 => draws.unit_scalar(kind),
            _ => loop {
                let a = draws.uniform(-4.0, 4.0);
                if a.abs() > 1e-3 && (a + 1.0).abs() > 1e-3 {
                    break Scalar::real(kind, a);
                }
            },
        };
        let reduction = heyde_reduction(&alpha).map_err(|e| e.to_string())?;
        let heyde = classify_heyde(&alpha).map_err(|e| e.to_string())?;
        let sd = classify_skitovich_darmois(&reduction.beta).map_err(|e| e.to_string())?;
        ensure(heyde.verdict == sd.verdict, || {
            format!("alpha = {alpha}: Heyde {:?} but reduced {:?}", heyde.verdict, sd.verdict)
        })?;
        ensure(reduction.statement_holds(), || format!("alpha = {alpha}: case statement fails"))?;

        // Recompute beta = (1 + alpha)^2 / (4 alpha) by hand for the case checks.
        let mut one_plus = alpha.components().to_vec();
        one_plus[0] += 1.0;
        let square = hamilton(&one_plus, &one_plus);
        let n = alpha.norm_squared();
        let inv: Vec<f64> = alpha.conjugate().components().iter().map(|x| x / (4.0 * n)).collect();
        let beta = hamilton(&square, &inv);
        let q = beta[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
        let expected_case = match i % 3 {
            0 => HeydeCase::A,
            1 => HeydeCase::B,
            _ => HeydeCase::C,
        };
        ensure(reduction.case == expected_case, || format!("alpha = {alpha}: case {:?}", reduction.case))?;
        match reduction.case {
            HeydeCase::A => ensure(q > 0.0, || format!("alpha = {alpha}: q = 0 in case A"))?,
            HeydeCase::B => {
                ensure(q < 1e-12 && beta[0] > 0.0, || format!("alpha = {alpha}: q = {q}, p = {}", beta[0]))?
            }
            HeydeCase::C => ensure(q == 0.0 && beta[0].signum() == alpha.re().signum(), || {
                format!("alpha = {alpha}: p = {} has the wrong sign", beta[0])
            })?,
        }
        ensure((reduction.p - beta[0]).abs() < 1e-9 * (1.0 + beta[0].abs()), || {
            format!("alpha = {alpha}: p = {} but recomputed {}", reduction.p, beta[0])
        })?;
        counts[i % 3] += 1;
    }
    Ok(format!("1000 alpha (cases A/B/C: {}/{}/{})", counts[0], counts[1], counts[2]))
}

fn heyde_counterexample() -> Outcome {
    let alpha = c(-2.0);
    let (l1, l2) = construct_heyde_counterexample(&alpha, &preset_shape(Kind::Complex)).map_err(|e| e.to_string())?;
    let grid = Grid::default_for(2).map_err(|e| e.to_string())?;
    let r = symmetry_residual(&l1, &l2, &alpha, &grid).map_err(|e| e.to_string())?;
    ensure(r < RESIDUAL_TOL, || format!("symmetry residual {r:e}"))?;

    let (first, second) = sd_forms(alpha);
    let laws = [l1, l2];
    let accepted = count_seeds(100, |seed| {
        let pair = sample_forms(&laws, &first, &second, 1000, seed).map_err(|e| e.to_string())?;
        let result =
            conditional_symmetry_test(&pair, &PermutationOptions::new(199, seed)).map_err(|e| e.to_string())?;
        Ok(result.p_value > 0.01)
    })?;
    ensure(accepted >= 95, || format!("accepted {accepted}/100 seeds"))?;

    let shifted = GaussianLaw::new(Vector::from_slice(&[1.0, 1.0]).unwrap(), *l1.shape()).map_err(|e| e.to_string())?;
    let pair = sample_forms(&[shifted, l2], &first, &second, 1000, 0).map_err(|e| e.to_string())?;
    let control = conditional_symmetry_test(&pair, &PermutationOptions::new(199, 0)).map_err(|e| e.to_string())?;
    ensure(control.p_value <= 0.01, || format!("mean-shifted control p = {}", control.p_value))?;
    Ok(format!("residual {r:.2e}, accepted {accepted}/100, control p = {:.3}", control.p_value))
}

fn cancellation_laws() -> Outcome {
    let q = |a, b, c, d| Scalar::quaternion(a, b, c, d);
    let complex_cases = [
        (vec![1.0, 1.0], vec![c(1.0), c(-1.0)]),
        (vec![1.0, 1.0, 2.0], vec![c(1.0), c(1.0), c(-1.0)]),
        (vec![1.0, 1.0], vec![Scalar::complex(0.0, 1.0), Scalar::complex(0.0, -1.0)]),
    ];
    let quaternion_cases = [
        (vec![1.0, 1.0], vec![q(1.0, 0.0, 0.0, 0.0), q(-1.0, 0.0, 0.0, 0.0)]),
        (vec![1.0, 1.0, 2.0], vec![q(1.0, 0.0, 0.0, 0.0), q(1.0, 0.0, 0.0, 0.0), q(-1.0, 0.0, 0.0, 0.0)]),
        (vec![1.0, 1.0, 2.0], vec![q(0.0, 1.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0), q(0.0, -0.5, -0.5, 0.0)]),
    ];
    let mut worst_constraint: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for (kind, cases) in [(Kind::Complex, complex_cases), (Kind::Quaternion, quaternion_cases)] {
        let shape = preset_shape(kind);
        let grid = Grid::default_for(kind.dim()).map_err(|e| e.to_string())?;
        for (sigmas, betas) in cases {
            let betas = LinearForm::new(betas).map_err(|e| e.to_string())?;
            let laws = construct_proposition1(&sigmas, &betas, &shape).map_err(|e| e.to_string())?;
            let constraint = narrow_sense_constraint(&sigmas, &betas).frobenius_norm();
            let ones = LinearForm::sum(kind, sigmas.len()).unwrap();
            let criterion =
                gaussian_independence_criterion(&laws, &ones, &betas).map_err(|e| e.to_string())?.frobenius_norm();
            ensure(constraint < 1e-10 && criterion < 1e-10, || {
                format!("sigma = {sigmas:?}: constraint {constraint:e}, criterion {criterion:e}")
            })?;
            ensure(laws.iter().all(|l| !l.is_narrow_sense(NARROW_TOL)), || {
                format!("sigma = {sigmas:?}: narrow-sense law")
            })?;
            let r = independence_residual(&laws, &ones, &betas, &grid).map_err(|e| e.to_string())?;
            ensure(r < RESIDUAL_TOL, || format!("sigma = {sigmas:?}: residual {r:e}"))?;
            worst_constraint = worst_constraint.max(constraint);
            worst_residual = worst_residual.max(r);
        }
    }
    Ok(format!("6 configurations, max constraint {worst_constraint:.2e}, max residual {worst_residual:.2e}"))
}

struct Config {
    laws: Vec<GaussianLaw>,
    first: LinearForm,
    second: LinearForm,
}

fn random_mean(draws: &mut Draws, dim: usize) -> Vector {
    let values: Vec<f64> = (0..dim).map(|_| draws.normal()).collect();
    Vector::from_slice(&values).unwrap()
}

fn nonscalar_psd(draws: &mut Draws, dim: usize) -> Matrix {
    loop {
        let b = draws.psd(dim, 0.7);
        let eig = b.symmetric_eigen();
        if eig.max_value() - eig.min_value() > 0.1 {
            return b;
        }
    }
}

fn zero_config(draws: &mut Draws, kind: Kind, index: usize) -> Config {
    let dim = kind.dim();
    if index.is_multiple_of(2) {
        let alpha = Scalar::real(kind, draws.uniform(-3.0, -0.1));
        let (l1, l2) = construct_sd_counterexample(&alpha, &nonscalar_psd(draws, dim)).unwrap();
        let laws =
            [l1, l2].into_iter().map(|l| GaussianLaw::new(random_mean(draws, dim), *l.shape()).unwrap()).collect();
        let (first, second) = sd_forms(alpha);
        Config { laws, first, second }
    } else {
        let n = 2 + index % 3;
        let sigmas: Vec<f64> = (0..n).map(|_| draws.uniform(0.2, 2.0)).collect();
        let mut betas: Vec<Scalar> = (0..n - 1).map(|_| draws.scalar(kind)).collect();
        // beta_n = -sum_{j<n} sigma_j beta_j / sigma_n keeps sum sigma_j conj(beta_j) = 0.
        let mut last = Scalar::zero(kind);
        for (s, b) in sigmas.iter().zip(&betas) {
            last = last.sub(&b.scale(*s / sigmas[n - 1])).unwrap();
        }
        betas.push(last);
        let betas = LinearForm::new(betas).unwrap();
        let laws = construct_proposition1(&sigmas, &betas, &nonscalar_psd(draws, dim))
            .unwrap()
            .into_iter()
            .map(|l| GaussianLaw::new(random_mean(draws, dim), *l.shape()).unwrap())
            .collect();
        Config { laws, first: LinearForm::sum(kind, n).unwrap(), second: betas }
    }
}

fn generic_config(draws: &mut Draws, kind: Kind, index: usize) -> Config {
    let dim = kind.dim();
    let n = 2 + index % 3;
    let laws = (0..n).map(|_| GaussianLaw::new(random_mean(draws, dim), draws.psd(dim, 0.2)).unwrap()).collect();
    let first = LinearForm::new((0..n).map(|_| draws.scalar(kind)).collect()).unwrap();
    let second = LinearForm::new((0..n).map(|_| draws.scalar(kind)).collect()).unwrap();
    Config { laws, first, second }
}

fn criterion_equivalence() -> Outcome {
    let mut draws = Draws::new(8);
    let mut summary = Vec::new();
    for kind in [Kind::Complex, Kind::Quaternion] {
        let grid = Grid::default_for(kind.dim()).map_err(|e| e.to_string())?;
        let mut zeros = 0;
        let mut smallest_nonzero = f64::INFINITY;
        let mut disagreements = Vec::new();
        for index in 0..500 {
            let config = if index < 250 {
                zero_config(&mut draws, kind, index)
            } else {
                generic_config(&mut draws, kind, index)
            };
            let m = gaussian_independence_criterion(&config.laws, &config.first, &config.second)
                .map_err(|e| e.to_string())?
                .frobenius_norm();
            let r =
                independence_residual(&config.laws, &config.first, &config.second, &grid).map_err(|e| e.to_string())?;
            let criterion_zero = m < 1e-10;
            let residual_zero = r < 1e-10;
            if criterion_zero {
                zeros += 1;
            } else {
                smallest_nonzero = smallest_nonzero.min(r);
            }
            if criterion_zero != residual_zero {
                disagreements.push(format!("#{index}: criterion {m:e}, residual {r:e}"));
            }
        }
        ensure(disagreements.is_empty(), || {
            format!("{kind:?}: {} disagreements, first {}", disagreements.len(), disagreements[0])
        })?;
        summary.push(format!(
            "{kind:?}: 500 configs, {zeros} with zero criterion, smallest residual otherwise {smallest_nonzero:.2e}"
        ));
    }
    Ok(summary.join("; "))
}
