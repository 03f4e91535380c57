//! Reconstruction of `f` from its generator `p in P`:
//! `f(z) = z (beta + (1 - beta) p_n(z))^{1/alpha}` where `p_n` is the n-th
//! iterated integral transform of `p`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{factorial, ClassParams};
use crate::caratheodory::{iterated_transform, min_real_part, shift_to_beta, HerglotzAtoms};
use crate::error::{domain, usage, Result};
use crate::scalar::{Coefficient, Scalar};
use crate::series::TruncatedSeries;

/// `f = z (beta + (1 - beta) p_n)^{1/alpha}` at the order of `p`.
pub fn f_from_p<S: Scalar>(p: &TruncatedSeries<S>, params: &ClassParams<S>) -> Result<TruncatedSeries<S>> {
    if p.order() < 1 {
        return usage("f_from_p needs order >= 1");
    }
    let p_n = iterated_transform(p, &params.transform())?;
    let base = shift_to_beta(&p_n, &params.beta)?;
    let exponent = S::one() / params.alpha.clone();
    Ok(base.real_power(&exponent)?.shift_up())
}

pub fn f_from_atoms<S: Scalar>(
    p: &HerglotzAtoms<S>,
    params: &ClassParams<S>,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    f_from_p(&p.series(order), params)
}

/// `B~_m = (1-beta)^m alpha^{m(n-1)} prod_{j<m} (1 - j alpha) / m!`.
pub(crate) fn b_tilde<S: Scalar>(params: &ClassParams<S>, m: usize) -> S {
    let prod = (0..m).fold(S::one(), |acc, j| {
        acc * (S::one() - S::from_int(j as i64) * params.alpha.clone())
    });
    let exp = m as i64 * (params.n as i64 - 1);
    params.one_minus_beta().powi(m as u32) * params.alpha.powz(exp) * prod / factorial::<S>(m)
}

/// `a_k` as `sum_{m=1}^{k-1} B~_m C^{(m)}_{k-1}`, where `C^{(m)}` are the
/// coefficients of `(sum_j b_j z^j / (alpha + j)^n)^m`.
pub fn a_k_direct<S: Scalar>(p: &TruncatedSeries<S>, params: &ClassParams<S>, k: usize) -> Result<Coefficient<S>> {
    if k < 2 {
        return usage(format!("a_k_direct needs k >= 2, got {k}"));
    }
    if p.order() < k - 1 {
        return usage(format!("series order {} too small for a_{k}", p.order()));
    }
    let top = k - 1;
    let generator = TruncatedSeries::from_fn(top, |j| {
        if j == 0 {
            Complex::zero()
        } else {
            let w = (params.alpha.clone() + S::from_int(j as i64)).powi(params.n);
            p.coeff(j) / w
        }
    });
    let mut power = TruncatedSeries::one(top);
    let mut acc = Complex::zero();
    for m in 1..=top {
        power = power.mul(&generator)?;
        acc = acc + power.coeff(top) * b_tilde(params, m);
    }
    Ok(acc)
}

/// Minimum over `|z| = radius` of `Re D^n(f^alpha)/(alpha^n z^alpha) - beta`.
///
/// The branch of `z^alpha` never has to be chosen: `(f/z)^alpha = sum e_k z^k`
/// is formed by the real-power recurrence and `D^n` acts on `z^{alpha+k}` as
/// the diagonal factor `((alpha + k)/alpha)^n`.
pub fn verify_membership<S: Scalar>(
    f: &TruncatedSeries<S>,
    params: &ClassParams<S>,
    radius: f64,
    samples: usize,
) -> Result<f64> {
    if f.order() < 1 || !f.coeff(0).is_zero() || f.coeff(1) != Complex::one() {
        return domain("verify_membership needs f = z + a_2 z^2 + ...");
    }
    let e = f.shift_down().real_power(&params.alpha)?;
    let alpha = &params.alpha;
    let normalized = e.map_indexed(|k, c| {
        let ratio = (alpha.clone() + S::from_int(k as i64)) / alpha.clone();
        c * ratio.powi(params.n)
    });
    Ok(min_real_part(&normalized, radius, samples)? - params.beta.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::extremal_p;
    use crate::caratheodory::{kernel_series, random_herglotz};
    use crate::scalar::{real, Rational};

    type Q = Rational;

    fn qp(n: u32, a: (i64, i64), b: (i64, i64)) -> ClassParams<Q> {
        ClassParams::new(n, Q::ratio(a.0, a.1), Q::ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn trivial_generator_gives_identity() {
        let f = f_from_p(&TruncatedSeries::<Q>::one(8), &qp(2, (3, 2), (1, 4))).unwrap();
        assert_eq!(f, TruncatedSeries::monomial(Complex::one(), 1, 8));
    }

    #[test]
    fn alpha_one_is_linear() {
        // a_k = (1 - beta) alpha^n b_{k-1} / (alpha + k - 1)^n = 2/k at alpha = n = 1.
        let p = kernel_series(&real(Q::one()), 10).unwrap();
        let f = f_from_p(&p, &qp(1, (1, 1), (0, 1))).unwrap();
        for k in 2..=10 {
            assert_eq!(f.coeff(k), real(Q::ratio(2, k as i64)));
        }
    }

    #[test]
    fn extremal_second_coefficient() {
        let p = extremal_p::<Q>(2).unwrap().series(6);
        let f = f_from_p(&p, &qp(1, (2, 1), (0, 1))).unwrap();
        assert_eq!(f.coeff(2), real(Q::ratio(2, 3)));
    }

    #[test]
    fn direct_formula_second_coefficient() {
        let p = random_herglotz::<Q>(11, 3).unwrap().series(4);
        let params = qp(2, (5, 2), (1, 3));
        let a2 = a_k_direct(&p, &params, 2).unwrap();
        let alpha = params.alpha.clone();
        let expect = p.coeff(1) * (Q::ratio(2, 3) * alpha.clone() / (alpha + Q::one()).powi(2));
        assert_eq!(a2, expect);
    }

    #[test]
    fn direct_formula_matches_pipeline_exactly() {
        let params = qp(1, (2, 1), (0, 1));
        let p = kernel_series(&real(Q::one()), 6).unwrap();
        let f = f_from_p(&p, &params).unwrap();
        assert_eq!(a_k_direct(&p, &params, 3).unwrap(), f.coeff(3));
        let r = random_herglotz::<Q>(5, 3).unwrap().series(7);
        let params = qp(3, (7, 5), (1, 2));
        let f = f_from_p(&r, &params).unwrap();
        for k in 2..=7 {
            assert_eq!(a_k_direct(&r, &params, k).unwrap(), f.coeff(k), "k={k}");
        }
    }

    #[test]
    fn zero_tail_gives_zero_coefficients() {
        let p = TruncatedSeries::<Q>::one(6);
        for k in 2..=6 {
            assert!(a_k_direct(&p, &qp(1, (3, 1), (0, 1)), k).unwrap().is_zero());
        }
        assert!(a_k_direct(&p, &qp(1, (3, 1), (0, 1)), 1).is_err());
        assert!(a_k_direct(&p, &qp(1, (3, 1), (0, 1)), 9).is_err());
    }

    #[test]
    fn membership_of_identity() {
        let f = TruncatedSeries::monomial(Complex::<f64>::one(), 1, 8);
        let params = ClassParams::new(2, 1.5, 0.25).unwrap();
        let m = verify_membership(&f, &params, 0.5, 64).unwrap();
        assert!((m - 0.75).abs() < 1e-15);
        let bad = TruncatedSeries::from_real(vec![0.0, 2.0], 8);
        assert!(verify_membership(&bad, &params, 0.5, 64).is_err());
    }

    #[test]
    fn membership_of_extremal_hits_mobius_minimum() {
        let params = ClassParams::new(1, 2.0, 0.0).unwrap();
        let f = f_from_atoms(&extremal_p(2).unwrap(), &params, 300).unwrap();
        let m = verify_membership(&f, &params, 0.9, 720).unwrap();
        assert!((m - 1.0 / 19.0).abs() < 1e-9, "m = {m}");
    }

    #[test]
    fn membership_round_trip_for_random_generators() {
        let order = 64;
        let tail = crate::caratheodory::tail_bound(0.9, order - 1);
        for seed in 0..20 {
            let params = ClassParams::new((seed % 4) as u32, 1.5, 0.25).unwrap();
            let p = random_herglotz::<f64>(seed, 5).unwrap();
            let f = f_from_atoms(&p, &params, order).unwrap();
            let m = verify_membership(&f, &params, 0.9, 360).unwrap();
            assert!(m >= -tail - 1e-9, "seed {seed}: {m}");
        }
    }
}
