//! Alternating power series of the Nehari-Netanyahu lemma and its
//! iterated-transform variant.
//!
//! For `h = 1 + sum d_k z^k` and `1 + G` in `P`,
//! `gamma_m = 2^{-m} [1 + 1/2 sum_{mu=1}^m C(m, mu) d_mu]`,
//! `eta_m = (1 - beta) alpha^n gamma_m / (alpha + m)^n`, and the series is
//! `sum_{m>=1} (-1)^{m+1} eta_{m-1} G^m = sum_k A_k z^k`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{binomial, ClassParams};
use crate::error::{domain, Result};
use crate::scalar::{Coefficient, Scalar};
use crate::series::TruncatedSeries;

/// `gamma_0 ..= gamma_{count-1}` built from the coefficients of `h`.
pub fn nehari_gammas<S: Scalar>(h: &TruncatedSeries<S>, count: usize) -> Vec<Coefficient<S>> {
    (0..count)
        .map(|m| {
            let sum = (1..=m).fold(Complex::<S>::zero(), |acc, mu| {
                acc + h.coeff(mu) * binomial::<S>(m, mu)
            });
            (sum * S::ratio(1, 2) + Complex::one()) / S::from_int(2).powi(m as u32)
        })
        .collect()
}

/// The A-series at `order`. `G` must vanish at the origin and `h(0) = 1`.
pub fn nehari_series<S: Scalar>(
    h: &TruncatedSeries<S>,
    g: &TruncatedSeries<S>,
    params: &ClassParams<S>,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    if !g.coeff(0).is_zero() {
        return domain(format!("G must vanish at 0, got G_0 = {}", g.coeff(0)));
    }
    if h.coeff(0) != Complex::one() {
        return domain(format!("h must have constant term 1, got {}", h.coeff(0)));
    }
    let g = g.with_order(order);
    let gammas = nehari_gammas(h, order);
    let mut power = TruncatedSeries::one(order);
    let mut acc = TruncatedSeries::zero(order);
    for (idx, gamma) in gammas.iter().enumerate() {
        let m = idx + 1;
        power = power.mul(&g)?;
        if power.is_zero() {
            break;
        }
        let ratio = params.alpha.clone() / (params.alpha.clone() + S::from_int(idx as i64));
        let mut eta = gamma * (params.one_minus_beta() * ratio.powi(params.n));
        if m % 2 == 0 {
            eta = -eta;
        }
        acc = acc.add(&power.scale(&eta))?;
    }
    Ok(acc)
}

/// Claimed bound `2 (1 - beta) alpha^n / (alpha + k)^n` on `|A_k|`.
pub fn corollary1_bound<S: Scalar>(params: &ClassParams<S>, k: usize) -> S {
    let ratio = params.alpha.clone() / (params.alpha.clone() + S::from_int(k as i64));
    S::from_int(2) * params.one_minus_beta() * ratio.powi(params.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caratheodory::{half_hadamard, kernel_series, random_herglotz};
    use crate::scalar::{real, Rational};

    type Q = Rational;

    #[test]
    fn zero_g_gives_zero_series() {
        let params = ClassParams::new(1, Q::from_int(2), Q::zero()).unwrap();
        let h = TruncatedSeries::one(6);
        let a = nehari_series(&h, &TruncatedSeries::zero(6), &params, 6).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn trivial_h_with_linear_g() {
        // gamma_m = 2^{-m}; sum (-1)^{m+1} 2^{-(m-1)} (2z)^m = 2z - 2z^2 + 2z^3.
        let params = ClassParams::new(0, Q::from_int(3), Q::zero()).unwrap();
        let h = TruncatedSeries::one(3);
        let g = TruncatedSeries::monomial(real(Q::from_int(2)), 1, 3);
        let a = nehari_series(&h, &g, &params, 3).unwrap();
        let expect = TruncatedSeries::from_real(
            vec![Q::zero(), Q::from_int(2), Q::from_int(-2), Q::from_int(2)],
            3,
        );
        assert_eq!(a, expect);
    }

    #[test]
    fn rejects_nonzero_constant() {
        let params = ClassParams::new(0, 2.0, 0.0).unwrap();
        let h = TruncatedSeries::<f64>::one(4);
        assert!(nehari_series(&h, &TruncatedSeries::one(4), &params, 4).is_err());
        assert!(nehari_series(&h.scale(&Complex::new(2.0, 0.0)), &TruncatedSeries::zero(4), &params, 4).is_err());
    }

    #[test]
    fn gammas_from_trivial_h() {
        let g = nehari_gammas(&TruncatedSeries::<Q>::one(5), 5);
        for (m, v) in g.iter().enumerate() {
            assert_eq!(*v, real(Q::one() / Q::from_int(2).powi(m as u32)));
        }
    }

    #[test]
    fn lemma_bound_holds_at_n0_beta0() {
        let params = ClassParams::new(0, 2.0, 0.0).unwrap();
        let order = 16;
        for seed in 0..200u64 {
            let h = random_herglotz::<f64>(seed, 4).unwrap().series(order);
            let p = random_herglotz::<f64>(seed + 10_000, 4).unwrap().series(order);
            let q = random_herglotz::<f64>(seed + 20_000, 4).unwrap().series(order);
            let g = half_hadamard(&p, &q).unwrap().sub(&TruncatedSeries::one(order)).unwrap();
            let a = nehari_series(&h, &g, &params, order).unwrap();
            for k in 1..=order {
                assert!(a.coeff(k).norm() <= 2.0 + 1e-9, "seed {seed} k {k}: {}", a.coeff(k).norm());
            }
        }
        let mobius = kernel_series(&Complex::new(1.0, 0.0), order).unwrap();
        let g = mobius.sub(&TruncatedSeries::one(order)).unwrap();
        let a = nehari_series(&mobius, &g, &params, order).unwrap();
        assert!((1..=order).all(|k| a.coeff(k).norm() <= 2.0 + 1e-9));
    }
}
