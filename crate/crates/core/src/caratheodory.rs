//! Constructive machinery for the Carathéodory class `P`: analytic `p` on
//! the unit disk with `p(0) = 1` and `Re p > 0`.
//!
//! Members are represented by finite Herglotz combinations
//! `p(z) = sum_j lambda_j (1 + x_j z) / (1 - x_j z)` with `lambda_j >= 0`,
//! `sum lambda_j = 1`, `|x_j| = 1`, whose Taylor coefficients are
//! `b_k = 2 sum_j lambda_j x_j^k`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, usage, Result};
use crate::scalar::{Scalar, FLOAT_UNIT_TOL};
#[cfg(test)]
use crate::scalar::real;
use crate::series::TruncatedSeries;

/// One point mass of a Herglotz measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom<S: Scalar> {
    pub weight: S,
    pub point: Complex<S>,
}

/// A finite convex combination of rotated Möbius kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct HerglotzAtoms<S: Scalar> {
    atoms: Vec<Atom<S>>,
}

impl<S: Scalar> HerglotzAtoms<S> {
    /// Validates weights (nonnegative, summing to one) and unimodularity.
    /// Exact on the rational backend, 1e-12 absolute on floats.
    pub fn new(atoms: Vec<Atom<S>>) -> Result<Self> {
        if atoms.is_empty() {
            return domain("a Herglotz combination needs at least one atom");
        }
        let mut total = S::zero();
        for (i, a) in atoms.iter().enumerate() {
            if a.weight < S::zero() {
                return domain(format!("atom {i}: negative weight {}", a.weight));
            }
            total = total + a.weight.clone();
            check_unimodular(&a.point).map_err(|e| match e {
                crate::Error::Domain(m) => crate::Error::Domain(format!("atom {i}: {m}")),
                other => other,
            })?;
        }
        if !within_unit_tol(&total, &S::one()) {
            return domain(format!("weights sum to {total}, expected 1"));
        }
        Ok(Self { atoms })
    }

    pub fn single(point: Complex<S>) -> Result<Self> {
        Self::new(vec![Atom {
            weight: S::one(),
            point,
        }])
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Taylor series `1 + sum_k (2 sum_j lambda_j x_j^k) z^k`.
    pub fn series(&self, order: usize) -> TruncatedSeries<S> {
        let mut coeffs = vec![Complex::<S>::zero(); order + 1];
        coeffs[0] = Complex::one();
        let two = S::from_int(2);
        for a in &self.atoms {
            let mut xk: Complex<S> = Complex::one();
            let w = a.weight.clone() * two.clone();
            for c in coeffs.iter_mut().skip(1) {
                xk = &xk * &a.point;
                *c = c.clone() + &xk * w.clone();
            }
        }
        TruncatedSeries::new(coeffs, order)
    }

    /// Closed-form value `sum lambda_j (1 + x_j z)/(1 - x_j z)` in double
    /// precision, independent of any truncation.
    pub fn evaluate_closed(&self, z: Complex<f64>) -> Complex<f64> {
        let one = Complex::new(1.0, 0.0);
        self.atoms
            .iter()
            .map(|a| {
                let xz = crate::scalar::complex_to_f64(&a.point) * z;
                (one + xz) / (one - xz) * a.weight.to_f64()
            })
            .sum()
    }
}

fn within_unit_tol<S: Scalar>(a: &S, b: &S) -> bool {
    if S::EXACT {
        a == b
    } else {
        (a.to_f64() - b.to_f64()).abs() <= FLOAT_UNIT_TOL
    }
}

fn check_unimodular<S: Scalar>(x: &Complex<S>) -> Result<()> {
    let n2 = x.norm_sqr();
    if within_unit_tol(&n2, &S::one()) {
        Ok(())
    } else {
        domain(format!("point {x} is not unimodular (|x|^2 = {n2})"))
    }
}

/// Iteration depth `n` and index `alpha` of the iterated integral transform.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformParams<S: Scalar> {
    pub n: u32,
    pub alpha: S,
}

impl<S: Scalar> TransformParams<S> {
    pub fn new(n: u32, alpha: S) -> Result<Self> {
        if alpha <= S::zero() {
            return domain(format!("alpha must be positive, got {alpha}"));
        }
        Ok(Self { n, alpha })
    }
}

/// Unimodular point from the Pythagorean parameter `t`:
/// `x = ((1 - t^2) + 2 t i) / (1 + t^2)`. `t = None` stands for `t = inf`,
/// i.e. `x = -1`.
pub fn pythagorean_point<S: Scalar>(t: Option<&S>) -> Complex<S> {
    match t {
        None => Complex::new(-S::one(), S::zero()),
        Some(t) => {
            let t2 = t.clone() * t.clone();
            let den = S::one() + t2.clone();
            Complex::new(
                (S::one() - t2) / den.clone(),
                S::from_int(2) * t.clone() / den,
            )
        }
    }
}

/// Inverse of [`pythagorean_point`]: `t = Im x / (1 + Re x)`.
pub fn pythagorean_parameter<S: Scalar>(x: &Complex<S>) -> Option<S> {
    let den = S::one() + x.re.clone();
    if den.is_zero() {
        None
    } else {
        Some(x.im.clone() / den)
    }
}

/// The rotated Möbius kernel `(1 + x z)/(1 - x z) = 1 + 2 sum_k x^k z^k`.
pub fn kernel_series<S: Scalar>(x: &Complex<S>, order: usize) -> Result<TruncatedSeries<S>> {
    check_unimodular(x)?;
    Ok(HerglotzAtoms::single(x.clone())?.series(order))
}

pub fn herglotz_series<S: Scalar>(p: &HerglotzAtoms<S>, order: usize) -> TruncatedSeries<S> {
    p.series(order)
}

fn require_unit_constant<S: Scalar>(p: &TruncatedSeries<S>, what: &str) -> Result<()> {
    if p.coeff(0) != Complex::one() {
        return domain(format!("{what}: constant term must be 1, got {}", p.coeff(0)));
    }
    Ok(())
}

/// `r(z) = 1 + 1/2 sum_k p_k q_k z^k`, which stays in `P` when `p, q` do.
pub fn half_hadamard<S: Scalar>(
    p: &TruncatedSeries<S>,
    q: &TruncatedSeries<S>,
) -> Result<TruncatedSeries<S>> {
    require_unit_constant(p, "half_hadamard")?;
    require_unit_constant(q, "half_hadamard")?;
    if p.order() != q.order() {
        return usage(format!(
            "half_hadamard: order mismatch ({} vs {})",
            p.order(),
            q.order()
        ));
    }
    let half = S::ratio(1, 2);
    Ok(p.map_indexed(|k, c| {
        if k == 0 {
            Complex::one()
        } else {
            c * &q.coeff(k) * half.clone()
        }
    }))
}

/// Multiplier `(alpha / (alpha + k))^n` applied to the k-th coefficient by
/// `n` iterations of the integral transform.
pub fn transform_multiplier<S: Scalar>(t: &TransformParams<S>, k: usize) -> S {
    let ratio = t.alpha.clone() / (t.alpha.clone() + S::from_int(k as i64));
    ratio.powi(t.n)
}

/// n-th iterated integral transform `p_n(z) = (alpha/z^alpha) int_0^z
/// t^{alpha-1} p_{n-1}(t) dt`, applied coefficientwise in closed form.
pub fn iterated_transform<S: Scalar>(
    p: &TruncatedSeries<S>,
    t: &TransformParams<S>,
) -> Result<TruncatedSeries<S>> {
    if t.alpha <= S::zero() {
        return domain(format!("alpha must be positive, got {}", t.alpha));
    }
    require_unit_constant(p, "iterated_transform")?;
    if t.n == 0 {
        return Ok(p.clone());
    }
    Ok(p.map_indexed(|k, c| c * transform_multiplier(t, k)))
}

/// `beta + (1 - beta) p_n`: constant term kept at 1, tail scaled by `1 - beta`.
pub fn shift_to_beta<S: Scalar>(p_n: &TruncatedSeries<S>, beta: &S) -> Result<TruncatedSeries<S>> {
    check_beta(beta)?;
    require_unit_constant(p_n, "shift_to_beta")?;
    let factor = S::one() - beta.clone();
    Ok(p_n.map_indexed(|k, c| {
        if k == 0 {
            Complex::one()
        } else {
            c * factor.clone()
        }
    }))
}

pub(crate) fn check_beta<S: Scalar>(beta: &S) -> Result<()> {
    if *beta < S::zero() || *beta >= S::one() {
        return domain(format!("beta must lie in [0, 1), got {beta}"));
    }
    Ok(())
}

/// Minimum of `Re p` over `samples` equally spaced points of `|z| = radius`.
pub fn min_real_part<S: Scalar>(p: &TruncatedSeries<S>, radius: f64, samples: usize) -> Result<f64> {
    if !(radius > 0.0 && radius < 1.0) {
        return usage(format!("radius must lie in (0, 1), got {radius}"));
    }
    if samples < 8 {
        return usage(format!("need at least 8 samples, got {samples}"));
    }
    let p = p.to_f64();
    Ok((0..samples)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / samples as f64;
            p.evaluate_f64(Complex::from_polar(radius, theta)).re
        })
        .fold(f64::INFINITY, f64::min))
}

/// Upper bound `2 r^{N+1} / (1 - r)` on the dropped tail of a `P` member
/// truncated at order `N`, evaluated on `|z| = r`.
pub fn tail_bound(radius: f64, order: usize) -> f64 {
    2.0 * radius.powi(order as i32 + 1) / (1.0 - radius)
}

/// Deterministic random Herglotz combination: atom count uniform in
/// `1..=max_atoms`, points uniform on the circle, weights uniform on the
/// simplex (normalized exponentials). On the rational backend the points use
/// the Pythagorean parametrization with `t` rounded to denominator 16 and
/// weights rounded to denominator 64 before exact renormalization.
pub fn random_herglotz<S: Scalar>(seed: u64, max_atoms: usize) -> Result<HerglotzAtoms<S>> {
    if max_atoms == 0 {
        return usage("max_atoms must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_atoms);
    let mut raw = Vec::with_capacity(count);
    for _ in 0..count {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let u: f64 = rng.gen_range(f64::EPSILON..1.0);
        raw.push((theta, -u.ln()));
    }
    let total: f64 = raw.iter().map(|r| r.1).sum();
    let atoms = if S::EXACT {
        let mut ws: Vec<S> = raw
            .iter()
            .map(|r| S::approx_f64(r.1 / total, 64).max_with(S::ratio(1, 64)))
            .collect();
        let sum = ws.iter().cloned().fold(S::zero(), |a, b| a + b);
        for w in &mut ws {
            *w = w.clone() / sum.clone();
        }
        raw.iter()
            .zip(ws)
            .map(|(r, weight)| {
                let half = r.0 / 2.0;
                let point = if (half - std::f64::consts::FRAC_PI_2).abs() < 1e-3 {
                    pythagorean_point::<S>(None)
                } else {
                    let t = S::approx_f64(half.tan().clamp(-64.0, 64.0), 16);
                    pythagorean_point(Some(&t))
                };
                Atom { weight, point }
            })
            .collect()
    } else {
        raw.iter()
            .map(|r| Atom {
                weight: S::approx_f64(r.1 / total, 0),
                point: Complex::new(S::approx_f64(r.0.cos(), 0), S::approx_f64(r.0.sin(), 0)),
            })
            .collect()
    };
    HerglotzAtoms::new(atoms)
}

trait MaxWith: Sized {
    fn max_with(self, other: Self) -> Self;
}

impl<S: Scalar> MaxWith for S {
    fn max_with(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}
