use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex;
use rayon::prelude::*;
use serde_json::json;

use super::report::{BoundsRow, ExpandOutput, ExpandReportRow, GridPoint, SuiteReport, Witness};
use super::{trial_seed, GridSpec, SuiteConfig};
use crate::bounds::{
    bound_report, build_hk, check_eq24, corollary1_bound, extremal_p, extremal_series, f_from_atoms, f_from_p,
    nehari_series, sharp_bound, tabulated_z2_audit, theorem1_bound, theorem2_estimate, verify_membership,
    ClassParams,
};
use crate::caratheodory::{half_hadamard, min_real_part, random_herglotz, tail_bound};
use crate::doc::{atoms_to_value, parse_atoms};
use crate::error::{usage, Result};
use crate::scalar::{real, Scalar};
use crate::series::TruncatedSeries;

fn grid_point<S: Scalar>(n: u32, alpha: &S, beta: &S) -> GridPoint {
    GridPoint {
        n: Some(n),
        alpha: Some(alpha.render()),
        beta: Some(beta.render()),
    }
}

/// One row per `(n, alpha, beta, k)` with the three bound formulas.
pub fn run_bounds_table<S: Scalar>(grid: &GridSpec<S>) -> Result<Vec<BoundsRow>> {
    grid.validate()?;
    let mut rows = Vec::new();
    for (n, alpha, beta) in grid.points() {
        let params = ClassParams::new(n, alpha.clone(), beta.clone())?;
        for k in 2..=grid.k_max {
            let t1 = theorem1_bound(&params, k)?;
            rows.push(BoundsRow {
                n,
                alpha: alpha.render(),
                beta: beta.render(),
                k,
                sharp_bound: sharp_bound(&params, k).render(),
                sharp_bound_applicable: alpha > S::one(),
                theorem1_region: t1.region.to_string(),
                theorem1_value: t1.value.map(|v| v.render()).unwrap_or_default(),
                theorem2_estimate: theorem2_estimate(alpha.to_f64(), k - 1).render(),
            });
        }
    }
    Ok(rows)
}

/// For every grid point and `k <= k_max`, feeds the extremal generator for
/// `k` through the reconstruction and checks `|a_k|` against the sharp bound:
/// equality on the rational backend, relative deviation within
/// `config.extremal_rel_tol` on floats.
pub fn run_extremal_suite<S: Scalar>(grid: &GridSpec<S>, config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    grid.validate()?;
    grid.require_alpha_above_one("verify extremal")?;
    let jobs: Vec<(u32, S, S, usize)> = grid
        .points()
        .into_iter()
        .flat_map(|(n, a, b)| (2..=grid.k_max).map(move |k| (n, a.clone(), b.clone(), k)))
        .collect();
    jobs.par_iter()
        .map(|(n, alpha, beta, k)| {
            let start = Instant::now();
            let params = ClassParams::new(*n, alpha.clone(), beta.clone())?;
            let f = f_from_p(&extremal_series::<S>(*k, grid.order)?, &params)?;
            let a_k = f.coeff(*k);
            let bound = sharp_bound(&params, *k);
            let abs = S::modulus(&a_k);
            let rel_dev = (abs.clone() - bound.clone()).abs() / bound.clone();
            let passed = if S::EXACT {
                a_k == real(bound.clone())
            } else {
                rel_dev.to_f64() <= config.extremal_rel_tol
            };
            let witness = (!passed).then(|| {
                let doc = extremal_p::<S>(*k)
                    .map(|p| atoms_to_value(&p))
                    .unwrap_or_else(|_| json!({ "extremal_roots_of_unity": k - 1 }));
                Witness {
                    trial: 0,
                    trial_seed: 0,
                    k: *k,
                    generators: BTreeMap::from([("p".to_string(), doc)]),
                }
            });
            Ok(SuiteReport {
                suite: "extremal".into(),
                point: grid_point(*n, alpha, beta),
                k: Some(*k),
                passed,
                metric: "rel_dev".into(),
                worst: rel_dev.render(),
                detail: format!("a_k={} bound={}", a_k.re.render(), bound.render()),
                witness,
                elapsed: start.elapsed(),
            })
        })
        .collect()
}

struct TrialMargins<S: Scalar> {
    trial: u64,
    seed: u64,
    margins: Vec<S>,
    violated: Vec<bool>,
}

/// `trials` random Herglotz generators per grid point; asserts
/// `|a_k| <= bound + slack` for `2 <= k <= k_max`.
pub fn run_random_suite<S: Scalar>(grid: &GridSpec<S>, config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    grid.validate()?;
    grid.require_alpha_above_one("verify random")?;
    let mut out = Vec::new();
    for (n, alpha, beta) in grid.points() {
        let start = Instant::now();
        let params = ClassParams::new(n, alpha.clone(), beta.clone())?;
        let point = grid_point(n, &alpha, &beta);
        let key = point.key();
        let bounds: Vec<S> = (2..=grid.k_max).map(|k| sharp_bound(&params, k)).collect();
        let trials: Vec<TrialMargins<S>> = (0..grid.trials as u64)
            .into_par_iter()
            .map(|trial| {
                let seed = trial_seed(grid.seed, &key, trial);
                let p = random_herglotz::<S>(seed, config.max_atoms)?;
                let f = f_from_atoms(&p, &params, grid.order)?;
                let (margins, violated) = (2..=grid.k_max)
                    .zip(&bounds)
                    .map(|(k, b)| {
                        let a_k = f.coeff(k);
                        let margin = b.clone() - S::modulus(&a_k);
                        let bad = if S::EXACT {
                            a_k.norm_sqr() > b.clone() * b.clone()
                        } else {
                            margin.to_f64() < -config.slack
                        };
                        (margin, bad)
                    })
                    .unzip();
                Ok(TrialMargins { trial, seed, margins, violated })
            })
            .collect::<Result<_>>()?;
        for (idx, k) in (2..=grid.k_max).enumerate() {
            let worst = trials
                .iter()
                .min_by(|a, b| {
                    a.margins[idx]
                        .partial_cmp(&b.margins[idx])
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(a.trial.cmp(&b.trial))
                })
                .expect("at least one trial");
            let violations = trials.iter().filter(|t| t.violated[idx]).count();
            let failing = trials.iter().find(|t| t.violated[idx]);
            let witness = failing.map(|t| {
                let p = random_herglotz::<S>(t.seed, config.max_atoms).expect("replay");
                Witness {
                    trial: t.trial,
                    trial_seed: t.seed,
                    k,
                    generators: BTreeMap::from([("p".to_string(), atoms_to_value(&p))]),
                }
            });
            out.push(SuiteReport {
                suite: "random".into(),
                point: point.clone(),
                k: Some(k),
                passed: violations == 0,
                metric: "min_margin".into(),
                worst: worst.margins[idx].render(),
                detail: format!(
                    "bound={} trials={} violations={} worst_trial={}",
                    bounds[idx].render(),
                    grid.trials,
                    violations,
                    worst.trial
                ),
                witness,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(out)
}

/// Audit of the auxiliary functions `h_k` for every `alpha` and
/// `2 <= k <= k_max`: the defining gamma equation, `|d_mu| <= 2`, and
/// `min Re h_k >= -tail` on `|z| = config.radius`. Also recomputes the
/// tabulated `z^2` constants for `k = 6..=10` and, at `alpha = 1`, which of
/// `2(1-beta)/k^n` and `2(1-beta)/(k+1)^n` the extremal coefficient equals.
pub fn run_hk_audit<S: Scalar>(
    k_max: usize,
    alpha_values: &[S],
    order: usize,
    config: &SuiteConfig,
) -> Result<Vec<SuiteReport>> {
    if alpha_values.is_empty() {
        return usage("hk audit needs at least one alpha value");
    }
    if let Some(a) = alpha_values.iter().find(|a| **a <= S::one()) {
        return usage(format!("hk audit needs every alpha > 1, got {a}"));
    }
    if k_max < 2 || order < k_max {
        return usage(format!("need 2 <= k_max <= order, got k_max={k_max} order={order}"));
    }
    let tail = tail_bound(config.radius, order);
    let jobs: Vec<(S, usize)> = alpha_values
        .iter()
        .flat_map(|a| (2..=k_max).map(move |k| (a.clone(), k)))
        .collect();
    let mut out: Vec<SuiteReport> = jobs
        .par_iter()
        .map(|(alpha, k)| {
            let start = Instant::now();
            let (h, scheme) = build_hk(*k, alpha, order)?;
            let identity = check_eq24(&scheme, alpha);
            let max_d = scheme.max_abs_d();
            let d_ok = max_d <= S::from_int(2);
            let min_re = min_real_part(&h, config.radius, config.samples)?;
            let re_ok = min_re >= -tail;
            let lower = scheme.residuals().iter().filter(|r| !r.is_zero()).count();
            Ok(SuiteReport {
                suite: "hk".into(),
                point: GridPoint {
                    n: None,
                    alpha: Some(alpha.render()),
                    beta: None,
                },
                k: Some(*k),
                passed: identity && d_ok && re_ok,
                metric: "gamma_residual".into(),
                worst: scheme.defining_residual().render(),
                detail: format!(
                    "gamma_identity={identity} max|d|={} min_re={:.16e} tail={:.3e} nonzero_lower_m_residuals={lower}",
                    max_d.render(),
                    min_re,
                    tail
                ),
                witness: None,
                elapsed: start.elapsed(),
            })
        })
        .collect::<Result<_>>()?;

    for k in 6..=10 {
        let start = Instant::now();
        let audit = tabulated_z2_audit(k).expect("tabulated k");
        out.push(SuiteReport {
            suite: "hk-tabulated".into(),
            point: GridPoint::default(),
            k: Some(k),
            passed: true,
            metric: "tabulated_over_sigma".into(),
            worst: audit.ratio_to_sigma().render(),
            detail: audit.summary(),
            witness: None,
            elapsed: start.elapsed(),
        });
    }

    let one = S::one();
    for n in 0..=3u32 {
        let params = ClassParams::new(n, one.clone(), S::zero())?;
        for k in 2..=k_max {
            let start = Instant::now();
            let f = f_from_p(&extremal_series::<S>(k, k)?, &params)?;
            let a_k = S::modulus(&f.coeff(k));
            let by_k = S::from_int(2) / S::from_int(k as i64).powi(n);
            let by_k1 = S::from_int(2) / S::from_int(k as i64 + 1).powi(n);
            let m_k = S::close(&a_k, &by_k, 1e-12);
            let m_k1 = S::close(&a_k, &by_k1, 1e-12);
            let verdict = match (m_k, m_k1) {
                (true, true) => "matches both 2/k^n and 2/(k+1)^n",
                (true, false) => "matches 2/k^n; 2/(k+1)^n does not",
                (false, true) => "matches 2/(k+1)^n; 2/k^n does not",
                (false, false) => "matches neither",
            };
            out.push(SuiteReport {
                suite: "alpha-one".into(),
                point: grid_point(n, &one, &S::zero()),
                k: Some(k),
                passed: m_k || m_k1,
                metric: "extremal_abs_a_k".into(),
                worst: a_k.render(),
                detail: verdict.into(),
                witness: None,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(out)
}

/// Samples `(h, G)` with `h` a random Herglotz function and
/// `1 + G = half_hadamard(p, q)` for random Herglotz `p, q`, and checks
/// `|A_k| <= 2 (1-beta) alpha^n / (alpha+k)^n + slack` for `1 <= k <= k_max`.
/// The series is built at order `k_max`: `A_k` only depends on coefficients
/// up to `z^k`, so larger orders give identical values.
pub fn run_nehari_suite<S: Scalar>(grid: &GridSpec<S>, config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    grid.validate()?;
    let order = grid.k_max;
    let mut out = Vec::new();
    for (n, alpha, beta) in grid.points() {
        let start = Instant::now();
        let params = ClassParams::new(n, alpha.clone(), beta.clone())?;
        let point = grid_point(n, &alpha, &beta);
        let key = point.key();
        let bounds: Vec<S> = (1..=grid.k_max).map(|k| corollary1_bound(&params, k)).collect();
        let seeds = |trial: u64| {
            [
                trial_seed(grid.seed, &format!("{key}/h"), trial),
                trial_seed(grid.seed, &format!("{key}/p"), trial),
                trial_seed(grid.seed, &format!("{key}/q"), trial),
            ]
        };
        let trials: Vec<TrialMargins<S>> = (0..grid.trials as u64)
            .into_par_iter()
            .map(|trial| {
                let [sh, sp, sq] = seeds(trial);
                let h = random_herglotz::<S>(sh, config.max_atoms)?.series(order);
                let p = random_herglotz::<S>(sp, config.max_atoms)?.series(order);
                let q = random_herglotz::<S>(sq, config.max_atoms)?.series(order);
                let g = half_hadamard(&p, &q)?.sub(&TruncatedSeries::one(order))?;
                let a = nehari_series(&h, &g, &params, order)?;
                let (margins, violated) = (1..=grid.k_max)
                    .zip(&bounds)
                    .map(|(k, b)| {
                        let a_k = a.coeff(k);
                        let margin = b.clone() - S::modulus(&a_k);
                        let bad = if S::EXACT {
                            a_k.norm_sqr() > b.clone() * b.clone()
                        } else {
                            margin.to_f64() < -config.slack
                        };
                        (margin, bad)
                    })
                    .unzip();
                Ok(TrialMargins { trial, seed: sh, margins, violated })
            })
            .collect::<Result<_>>()?;
        for (idx, k) in (1..=grid.k_max).enumerate() {
            let worst = trials
                .iter()
                .min_by(|a, b| {
                    a.margins[idx]
                        .partial_cmp(&b.margins[idx])
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(a.trial.cmp(&b.trial))
                })
                .expect("at least one trial");
            let violations = trials.iter().filter(|t| t.violated[idx]).count();
            let witness = trials.iter().find(|t| t.violated[idx]).map(|t| {
                let [sh, sp, sq] = seeds(t.trial);
                let doc = |s| atoms_to_value(&random_herglotz::<S>(s, config.max_atoms).expect("replay"));
                Witness {
                    trial: t.trial,
                    trial_seed: sh,
                    k,
                    generators: BTreeMap::from([
                        ("h".to_string(), doc(sh)),
                        ("p".to_string(), doc(sp)),
                        ("q".to_string(), doc(sq)),
                    ]),
                }
            });
            out.push(SuiteReport {
                suite: "nehari".into(),
                point: point.clone(),
                k: Some(k),
                passed: violations == 0,
                metric: "min_margin".into(),
                worst: worst.margins[idx].render(),
                detail: format!(
                    "bound={} trials={} violations={} worst_trial={}",
                    bounds[idx].render(),
                    grid.trials,
                    violations,
                    worst.trial
                ),
                witness,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(out)
}

/// Expands the generator document `doc`: coefficients of `f`, a bound report
/// for every `2 <= k <= order`, and the sampled membership minimum.
pub fn expand_command<S: Scalar>(
    doc: &str,
    params: &ClassParams<S>,
    order: usize,
    radius: f64,
    samples: usize,
) -> Result<ExpandOutput> {
    if order < 2 {
        return usage("expand needs order >= 2");
    }
    let p = parse_atoms::<S>(doc)?;
    let f = f_from_atoms(&p, params, order)?;
    let reports = (2..=order)
        .map(|k| {
            let r = bound_report(&f, params, k)?;
            let a: Complex<S> = f.coeff(k);
            Ok(ExpandReportRow {
                k,
                a_k_re: a.re.render(),
                a_k_im: a.im.render(),
                a_k_abs: r.a_k_abs.render(),
                bound: r.bound.render(),
                bound_source: r.bound_source.as_str().into(),
                applicable: r.applicable,
                region: r.region.to_string(),
                margin: r.margin.render(),
                sharp_hit: r.sharp_hit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let membership_min = verify_membership(&f, params, radius, samples)?;
    Ok(ExpandOutput {
        n: params.n,
        alpha: params.alpha.render(),
        beta: params.beta.render(),
        order,
        coefficients: f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (k, c.re.render(), c.im.render()))
            .collect(),
        reports,
        membership_min,
        radius,
        samples,
    })
}
