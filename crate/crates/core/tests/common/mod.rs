//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use coeffbound::caratheodory::HerglotzAtoms;
use coeffbound::{Rational, Scalar, TruncatedSeries};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Gauss-Legendre nodes and weights on [0, 1], by Newton iteration on P_n.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((x + 1.0) / 2.0, w / 2.0));
    }
    out
}

/// Value at `z` of the n-fold integral transform
/// `p -> (alpha / z^alpha) int_0^z t^{alpha-1} p(t) dt`, integrating along the
/// ray `t = s z` by nested quadrature. For `alpha < 1` the substitution
/// `s = u^{1/alpha}` removes the endpoint singularity.
pub fn transform_by_quadrature(
    p: &dyn Fn(Complex<f64>) -> Complex<f64>,
    n: u32,
    alpha: f64,
    z: Complex<f64>,
    rule: &[(f64, f64)],
) -> Complex<f64> {
    if n == 0 {
        return p(z);
    }
    rule.iter()
        .map(|&(x, w)| {
            let (s, weight) = if alpha < 1.0 {
                (x.powf(1.0 / alpha), w)
            } else {
                (x, w * alpha * x.powf(alpha - 1.0))
            };
            transform_by_quadrature(p, n - 1, alpha, z * s, rule) * weight
        })
        .sum()
}

/// Taylor coefficients `0..=kmax` of `f` from samples on `|z| = r` (DFT).
pub fn coefficients_by_dft(f: &dyn Fn(Complex<f64>) -> Complex<f64>, r: f64, m: usize, kmax: usize) -> Vec<Complex<f64>> {
    let values: Vec<Complex<f64>> = (0..m)
        .map(|j| f(Complex::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / m as f64)))
        .collect();
    (0..=kmax)
        .map(|k| {
            let s: Complex<f64> = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex::from_polar(1.0, -2.0 * std::f64::consts::PI * (j * k) as f64 / m as f64))
                .sum();
            s / (m as f64 * r.powi(k as i32))
        })
        .collect()
}

/// `g^c` by the binomial route: `sum_m C(c, m) (g - 1)^m`, each power of
/// `g - 1` built by repeated multiplication.
pub fn binomial_power<S: Scalar>(g: &TruncatedSeries<S>, c: &S) -> TruncatedSeries<S> {
    let order = g.order();
    let x = g.sub(&TruncatedSeries::one(order)).unwrap();
    let mut acc = TruncatedSeries::one(order);
    let mut xm = TruncatedSeries::one(order);
    let mut binom = S::one();
    for m in 1..=order {
        xm = xm.mul(&x).unwrap();
        binom = binom * (c.clone() - S::from_int(m as i64 - 1)) / S::from_int(m as i64);
        acc = acc.add(&xm.scale(&Complex::new(binom.clone(), S::zero()))).unwrap();
    }
    acc
}

/// Plain double-loop Cauchy product.
pub fn naive_mul<S: Scalar>(a: &TruncatedSeries<S>, b: &TruncatedSeries<S>) -> Vec<Complex<S>> {
    let n = a.order();
    let mut out = vec![Complex::new(S::zero(), S::zero()); n + 1];
    for i in 0..=n {
        for j in 0..=n {
            if i + j <= n {
                out[i + j] = out[i + j].clone() + a.coeff(i) * b.coeff(j);
            }
        }
    }
    out
}

pub fn random_rational_series(rng: &mut ChaCha8Rng, order: usize, unit_constant: bool) -> TruncatedSeries<Rational> {
    TruncatedSeries::from_fn(order, |k| {
        if k == 0 && unit_constant {
            return Complex::new(Rational::from_int(1), Rational::from_int(0));
        }
        let mut r = || Rational::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        Complex::new(r(), r())
    })
}

pub fn random_float_series(rng: &mut ChaCha8Rng, order: usize, unit_constant: bool) -> TruncatedSeries<f64> {
    TruncatedSeries::from_fn(order, |k| {
        if k == 0 && unit_constant {
            return Complex::new(1.0, 0.0);
        }
        // Decaying coefficients keep high powers well conditioned.
        let scale = 0.5f64.powi(k as i32);
        Complex::new(rng.gen_range(-1.0..1.0) * scale, rng.gen_range(-1.0..1.0) * scale)
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest coefficient difference relative to the largest coefficient of `b`.
pub fn max_rel_dev(a: &TruncatedSeries<f64>, b: &TruncatedSeries<f64>) -> f64 {
    let scale = b.coeffs().iter().map(|c| c.norm()).fold(f64::MIN_POSITIVE, f64::max);
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm() / scale)
        .fold(0.0, f64::max)
}

pub fn closed_form(p: &HerglotzAtoms<f64>) -> impl Fn(Complex<f64>) -> Complex<f64> + '_ {
    move |z| p.evaluate_closed(z)
}
