//! Closed-form coefficient bounds and the extremal generators.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::reconstruct::b_tilde;
use super::ClassParams;
use crate::caratheodory::{Atom, HerglotzAtoms};
use crate::error::{domain, usage, Result};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// Sharp bound for `alpha > 1`:
/// `|a_k| <= 2 (1 - beta) alpha^{n-1} / (alpha + k - 1)^n`.
///
/// Evaluated for every `alpha > 0`; [`super::bound_report`] decides whether
/// it applies.
pub fn sharp_bound<S: Scalar>(params: &ClassParams<S>, k: usize) -> S {
    let alpha = params.alpha.clone();
    let den = (alpha.clone() + S::from_int(k as i64 - 1)).powi(params.n);
    S::from_int(2) * params.one_minus_beta() * alpha.powz(params.n as i64 - 1) / den
}

/// Parameter regions of the small-`alpha` theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum RegionTag {
    /// `0 < alpha < 1/(k-2)`.
    Omega1,
    /// `1/(k-2) <= alpha <= 1/(k-3)`, `k` even.
    Omega2,
    /// `1/(k-2) <= alpha < 1/(k-3)`, `k` odd.
    Omega3,
    OutOfTheorem1Range,
}

impl RegionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionTag::Omega1 => "Omega1",
            RegionTag::Omega2 => "Omega2",
            RegionTag::Omega3 => "Omega3",
            RegionTag::OutOfTheorem1Range => "OutOfTheorem1Range",
        }
    }
}

impl std::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Total classification of `(alpha, k)`. `1/0` is read as `+inf`, so `k = 2`
/// is always `Omega1` and `k = 3` is `Omega3` for every `alpha >= 1`.
/// Comparisons are done as `alpha (k - 2) < 1` to avoid division.
pub fn classify_region<S: Scalar>(alpha: &S, k: usize) -> RegionTag {
    let one = S::one();
    let scaled = |d: usize| alpha.clone() * S::from_int(d as i64);
    if k <= 2 || scaled(k - 2) < one {
        return RegionTag::Omega1;
    }
    // alpha >= 1/(k-2) from here on.
    if k.is_multiple_of(2) {
        if scaled(k - 3) <= one {
            RegionTag::Omega2
        } else {
            RegionTag::OutOfTheorem1Range
        }
    } else if k == 3 || scaled(k - 3) < one {
        RegionTag::Omega3
    } else {
        RegionTag::OutOfTheorem1Range
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem1Bound<S: Scalar> {
    pub region: RegionTag,
    /// `None` outside the three regions; no value is invented there.
    pub value: Option<S>,
}

/// Region-dependent bound `A_k = sum_{m=1}^{k-1} B_m Q^{(m)}_{k-1}` (or the
/// sum truncated at `m = k - 2` in `Omega3`), with
/// `B_m = 2^m B~_m` and `Q^{(m)}` the coefficients of
/// `(sum_{j>=1} z^j / (alpha + j)^n)^m`.
pub fn theorem1_bound<S: Scalar>(params: &ClassParams<S>, k: usize) -> Result<Theorem1Bound<S>> {
    if k < 2 {
        return usage(format!("theorem1_bound needs k >= 2, got {k}"));
    }
    let region = classify_region(&params.alpha, k);
    let m_top = match region {
        RegionTag::Omega1 | RegionTag::Omega2 => k - 1,
        RegionTag::Omega3 => k - 2,
        RegionTag::OutOfTheorem1Range => return Ok(Theorem1Bound { region, value: None }),
    };
    let top = k - 1;
    let base = TruncatedSeries::<S>::from_real(
        (0..=top)
            .map(|j| {
                if j == 0 {
                    S::zero()
                } else {
                    S::one() / (params.alpha.clone() + S::from_int(j as i64)).powi(params.n)
                }
            })
            .collect(),
        top,
    );
    let mut power = TruncatedSeries::one(top);
    let mut acc = S::zero();
    for m in 1..=m_top {
        power = power.mul(&base)?;
        let b_m = S::from_int(2).powi(m as u32) * b_tilde(params, m);
        acc = acc + b_m * power.coeff(top).re;
    }
    Ok(Theorem1Bound {
        region,
        value: Some(acc),
    })
}

/// Estimate for the coefficients of `f^alpha / z^alpha = sum A_{k+1} z^k`:
/// `exp(0.624 alpha^2 + (2 alpha^2 - 1/2) H_k)` with `H_k` the k-th harmonic
/// number.
pub fn theorem2_estimate(alpha: f64, k: usize) -> f64 {
    let harmonic: f64 = (1..=k).map(|j| 1.0 / j as f64).sum();
    (0.624 * alpha * alpha + (2.0 * alpha * alpha - 0.5) * harmonic).exp()
}

/// Equal weights on the `(k-1)`-th roots of unity: the generator whose
/// series is `1 + 2 sum_j z^{j(k-1)}`. Fails on the rational backend when the
/// roots are not rational (`k - 1` not in `{1, 2, 4}`); use
/// [`extremal_series`] there.
pub fn extremal_p<S: Scalar>(k: usize) -> Result<HerglotzAtoms<S>> {
    if k < 2 {
        return usage(format!("extremal_p needs k >= 2, got {k}"));
    }
    let q = (k - 1) as u64;
    let weight = S::ratio(1, q as i64);
    let atoms = (0..q)
        .map(|j| {
            S::root_of_unity(j, q)
                .map(|point| Atom {
                    weight: weight.clone(),
                    point,
                })
                .ok_or_else(|| {
                    crate::Error::Domain(format!(
                        "{}-th roots of unity are not representable on the {} backend",
                        q,
                        S::NAME
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    HerglotzAtoms::new(atoms)
}

/// Series of the extremal generator, `1 + 2 sum_j z^{j(k-1)}`, built directly
/// so it is exact on every backend.
pub fn extremal_series<S: Scalar>(k: usize, order: usize) -> Result<TruncatedSeries<S>> {
    if k < 2 {
        return domain(format!("extremal_series needs k >= 2, got {k}"));
    }
    let step = k - 1;
    Ok(TruncatedSeries::from_fn(order, |j| {
        if j == 0 {
            Complex::one()
        } else if j % step == 0 {
            Complex::new(S::from_int(2), S::zero())
        } else {
            Complex::zero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::f_from_p;
    use crate::scalar::{real, Rational};

    type Q = Rational;

    fn qp(n: u32, alpha: Q, beta: Q) -> ClassParams<Q> {
        ClassParams::new(n, alpha, beta).unwrap()
    }

    #[test]
    fn sharp_bound_values() {
        let p = qp(1, Q::from_int(2), Q::zero());
        assert_eq!(sharp_bound(&p, 2), Q::ratio(2, 3));
        let p0 = qp(0, Q::from_int(3), Q::ratio(1, 4));
        for k in 2..8 {
            assert_eq!(sharp_bound(&p0, k), Q::ratio(1, 2));
        }
        let near_one = ClassParams::new(2, 2.0, 1.0 - 1e-12).unwrap();
        assert!(sharp_bound(&near_one, 3) < 1e-11);
    }

    // Brute inequality oracle for the region sets, written with divisions.
    fn region_oracle(alpha: f64, k: usize) -> RegionTag {
        let inv = |d: usize| if d == 0 { f64::INFINITY } else { 1.0 / d as f64 };
        let (lo, hi) = (inv(k - 2), if k >= 3 { inv(k - 3) } else { f64::INFINITY });
        if alpha < lo {
            RegionTag::Omega1
        } else if k.is_multiple_of(2) && k >= 4 && alpha <= hi {
            RegionTag::Omega2
        } else if k % 2 == 1 && k >= 3 && alpha < hi {
            RegionTag::Omega3
        } else {
            RegionTag::OutOfTheorem1Range
        }
    }

    #[test]
    fn region_examples() {
        assert_eq!(classify_region(&7.5, 2), RegionTag::Omega1);
        assert_eq!(classify_region(&2.0, 3), RegionTag::Omega3);
        assert_eq!(classify_region(&0.4, 4), RegionTag::Omega1);
        assert_eq!(classify_region(&0.5, 4), RegionTag::Omega2);
        assert_eq!(classify_region(&1.0, 4), RegionTag::Omega2);
        assert_eq!(classify_region(&1.01, 4), RegionTag::OutOfTheorem1Range);
        assert_eq!(classify_region(&Q::ratio(1, 3), 5), RegionTag::Omega3);
        assert_eq!(classify_region(&Q::ratio(1, 2), 5), RegionTag::OutOfTheorem1Range);
    }

    #[test]
    fn region_matches_oracle_on_a_grid() {
        for k in 2..=14 {
            for i in 1..=400 {
                let alpha = i as f64 / 128.0;
                assert_eq!(classify_region(&alpha, k), region_oracle(alpha, k), "alpha={alpha} k={k}");
            }
            // Boundaries exactly, on the rational backend.
            for d in 1..=12 {
                let alpha = Q::ratio(1, d);
                let f = 1.0 / d as f64;
                assert_eq!(classify_region(&alpha, k), region_oracle(f, k), "1/{d} k={k}");
            }
        }
    }

    #[test]
    fn theorem1_low_indices_reduce_to_sharp_bound() {
        for &(a, b) in &[((3, 2), (0, 1)), ((2, 1), (1, 4)), ((5, 1), (9, 10))] {
            for n in 0..4 {
                let p = qp(n, Q::ratio(a.0, a.1), Q::ratio(b.0, b.1));
                let t2 = theorem1_bound(&p, 2).unwrap();
                assert_eq!(t2.region, RegionTag::Omega1);
                assert_eq!(t2.value.unwrap(), sharp_bound(&p, 2));
                let t3 = theorem1_bound(&p, 3).unwrap();
                assert_eq!(t3.region, RegionTag::Omega3);
                assert_eq!(t3.value.unwrap(), sharp_bound(&p, 3));
            }
        }
    }

    #[test]
    fn theorem1_k4_small_alpha_brute_force() {
        // alpha = 3/10, n = 1, beta = 0: expand (sum z^j/(alpha+j))^m by hand
        // at order 3.
        let alpha = Q::ratio(3, 10);
        let p = qp(1, alpha.clone(), Q::zero());
        let w = |j: i64| Q::one() / (alpha.clone() + Q::from_int(j));
        let q1 = w(3);
        let q2 = Q::from_int(2) * w(1) * w(2);
        let q3 = w(1).powi(3);
        let b = |m: u32, prod: Q, fact: i64| {
            Q::from_int(2).powi(m) * alpha.powz(0) * prod / Q::from_int(fact)
        };
        let one = Q::one();
        let b1 = b(1, one.clone(), 1);
        let b2 = b(2, one.clone() - alpha.clone(), 2);
        let b3 = b(3, (one.clone() - alpha.clone()) * (one - Q::from_int(2) * alpha.clone()), 6);
        let t = theorem1_bound(&p, 4).unwrap();
        assert_eq!(t.region, RegionTag::Omega1);
        assert_eq!(t.value.unwrap(), b1 * q1 + b2 * q2 + b3 * q3);
    }

    #[test]
    fn theorem1_reports_out_of_range_without_value() {
        let t = theorem1_bound(&ClassParams::new(1, 2.0, 0.0).unwrap(), 6).unwrap();
        assert_eq!(t.region, RegionTag::OutOfTheorem1Range);
        assert!(t.value.is_none());
    }

    #[test]
    fn theorem2_values() {
        assert!((theorem2_estimate(1.0, 0) - 0.624f64.exp()).abs() < 1e-15);
        assert!((theorem2_estimate(1.0, 0) - 1.8664).abs() < 1e-4);
        for &alpha in &[0.5, 1.0, 2.0] {
            for k in 0..30 {
                assert!(theorem2_estimate(alpha, k + 1) >= theorem2_estimate(alpha, k));
            }
        }
    }

    #[test]
    fn extremal_generators() {
        let k2 = extremal_p::<Q>(2).unwrap();
        assert_eq!(k2.len(), 1);
        assert_eq!(k2.atoms()[0].point, real(Q::one()));
        let k3 = extremal_p::<Q>(3).unwrap();
        assert_eq!(k3.series(8), extremal_series(3, 8).unwrap());
        assert!(extremal_p::<Q>(4).is_err());
        for k in 2..=12 {
            let a = extremal_p::<f64>(k).unwrap().series(40);
            assert!(a.close_to(&extremal_series(k, 40).unwrap(), 1e-13), "k={k}");
        }
    }

    #[test]
    fn extremal_attains_sharp_bound_exactly_for_k2() {
        let params = qp(1, Q::from_int(2), Q::zero());
        let f = f_from_p(&extremal_series(2, 4).unwrap(), &params).unwrap();
        assert_eq!(f.coeff(2), real(sharp_bound(&params, 2)));
    }
}
