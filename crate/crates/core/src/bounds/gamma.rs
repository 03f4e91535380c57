//! The gamma-scheme linking the Nehari-Netanyahu series to `a_k`, and the
//! auxiliary Carathéodory functions `h_k` whose coefficients `d_mu` realize
//! it.
//!
//! For each `k` the scheme needs, at `m = k - 1`,
//!
//! ```text
//! 2^{-(m-1)} [1 + 1/2 sum_{mu=1}^{m-1} C(m-1, mu) d_mu] = gamma_{m-1}
//! gamma_{m-1} = prod_{j=1}^{m-1} (j alpha - 1) / (m! alpha^{m-1})
//! ```
//!
//! and `h_k` is written down explicitly for `k = 2..5` and by a two-parameter
//! recipe (`d_1 = -2/(k-2)`, even-index `d` equal to `sigma`, odd-index `d`
//! above one zero) for `k >= 6`. Every `h_k` is a convex combination of `P`
//! members. The equation is imposed at `m = k - 1` only; [`GammaScheme::residuals`]
//! exposes the lower-`m` residuals, which do not vanish for `k >= 4`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{binomial, factorial, ClassParams};
use crate::error::{domain, usage, Result};
use crate::scalar::{Rational, Scalar};
use crate::series::TruncatedSeries;

/// `gamma_{m-1}` for `m >= 1`; `gamma_0 = 1`.
pub fn gamma_target<S: Scalar>(m: usize, alpha: &S) -> S {
    assert!(m >= 1, "gamma_target is indexed from m = 1");
    let prod = (1..m).fold(S::one(), |acc, j| {
        acc * (S::from_int(j as i64) * alpha.clone() - S::one())
    });
    prod / (factorial::<S>(m) * alpha.powi((m - 1) as u32))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaScheme<S: Scalar> {
    pub k: usize,
    pub alpha: S,
    /// `k - 1`.
    pub m_max: usize,
    /// Targets `gamma_0 ..= gamma_{m_max - 1}`.
    pub gammas: Vec<S>,
    /// `d_1 ..= d_{m_max - 1}` (index 0 holds `d_1`).
    pub d: Vec<S>,
    /// Common value of the even-index `d` in the `k >= 6` recipe.
    pub sigma: Option<S>,
    /// Largest even index `<= k - 2` (`k >= 6`).
    pub xi: Option<usize>,
    /// Largest odd index `<= k - 2` (`k >= 6`).
    pub omega: Option<usize>,
}

impl<S: Scalar> GammaScheme<S> {
    /// `2^{-(m-1)} [1 + 1/2 sum_{mu=1}^{m-1} C(m-1, mu) d_mu]`.
    pub fn lhs(&self, m: usize) -> S {
        let top = m - 1;
        let sum = (1..=top).fold(S::zero(), |acc, mu| {
            acc + binomial::<S>(top, mu) * self.d[mu - 1].clone()
        });
        (S::one() + sum * S::ratio(1, 2)) / S::from_int(2).powi(top as u32)
    }

    /// Residual `lhs(m) - gamma_{m-1}` for `m = 1..=m_max`.
    pub fn residuals(&self) -> Vec<S> {
        (1..=self.m_max)
            .map(|m| self.lhs(m) - self.gammas[m - 1].clone())
            .collect()
    }

    /// Residual of the defining equation `m = k - 1`.
    pub fn defining_residual(&self) -> S {
        self.lhs(self.m_max) - self.gammas[self.m_max - 1].clone()
    }

    /// `eta_m = (1 - beta) alpha^n gamma_m / (alpha + m)^n`; `eta_0 = 1 - beta`.
    pub fn etas(&self, params: &ClassParams<S>) -> Vec<S> {
        self.gammas
            .iter()
            .enumerate()
            .map(|(m, g)| {
                let ratio = params.alpha.clone() / (params.alpha.clone() + S::from_int(m as i64));
                params.one_minus_beta() * ratio.powi(params.n) * g.clone()
            })
            .collect()
    }

    pub fn max_abs_d(&self) -> S {
        self.d
            .iter()
            .map(|d| d.abs())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }
}

/// True when the defining equation (`m = k - 1`) holds: exactly on the
/// rational backend, to `GAMMA_IDENTITY_TOL` (scaled by `max(1, |gamma|)`) on floats.
pub fn check_eq24<S: Scalar>(scheme: &GammaScheme<S>, alpha: &S) -> bool {
    let target = gamma_target(scheme.m_max, alpha);
    let residual = scheme.lhs(scheme.m_max) - target.clone();
    if S::EXACT {
        residual.is_zero()
    } else {
        residual.to_f64().abs() <= GAMMA_IDENTITY_TOL * target.to_f64().abs().max(1.0)
    }
}

/// Float tolerance on the gamma-scheme residual.
pub const GAMMA_IDENTITY_TOL: f64 = 1e-12;

/// `(1 + s z^j)/(1 - s z^j) = 1 + 2 sum_i s^i z^{ij}` for `s = +-1`.
fn rotated_kernel<S: Scalar>(step: usize, negative: bool, order: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(order, |i| {
        if i == 0 {
            Complex::one()
        } else if i % step == 0 {
            let odd = (i / step) % 2 == 1;
            let v = if negative && odd { -2 } else { 2 };
            Complex::new(S::from_int(v), S::zero())
        } else {
            Complex::zero()
        }
    })
}

/// `(1 - |s|) + |s| K(z^step)` with `K` the Möbius kernel rotated by the sign
/// of `s`; its `z^step` coefficient is `2 s`.
fn one_step_combination<S: Scalar>(s: &S, step: usize, order: usize) -> TruncatedSeries<S> {
    let w = s.abs();
    let kernel = rotated_kernel::<S>(step, s.is_negative(), order);
    kernel.map_indexed(|i, c| {
        if i == 0 {
            Complex::one()
        } else {
            c * w.clone()
        }
    })
}

/// Builds `h_k` and its gamma-scheme. Requires `alpha > 1` and `order >= k`.
pub fn build_hk<S: Scalar>(k: usize, alpha: &S, order: usize) -> Result<(TruncatedSeries<S>, GammaScheme<S>)> {
    if k < 2 {
        return usage(format!("build_hk needs k >= 2, got {k}"));
    }
    if *alpha <= S::one() {
        return domain(format!("h_k is constructed for alpha > 1, got {alpha}"));
    }
    if order < k {
        return usage(format!("order {order} must be at least k = {k}"));
    }
    let m_max = k - 1;
    let gammas = (1..=m_max).map(|m| gamma_target(m, alpha)).collect();
    let mut d = vec![S::zero(); m_max - 1];
    let (mut sigma, mut xi, mut omega) = (None, None, None);
    let one = S::one();
    let a = alpha.clone();

    let h = match k {
        2 => TruncatedSeries::one(order),
        3 => {
            d[0] = S::from_int(-2) / a.clone();
            // (alpha - 1)/alpha + (1/alpha) (1 - z)/(1 + z)
            one_step_combination(&(S::from_int(-1) / a), 1, order)
        }
        4 => {
            let a2 = a.clone() * a.clone();
            let half = (a2.clone() - S::from_int(6) * a.clone() + S::from_int(2)) / (S::from_int(3) * a2);
            d[1] = S::from_int(2) * half.clone();
            one_step_combination(&half, 2, order)
        }
        5 => {
            let a2 = a.clone() * a.clone();
            let a3 = a2.clone() * a.clone();
            let half = (S::from_int(3) * a3.clone() - S::from_int(11) * a2 + S::from_int(6) * a.clone() - one.clone())
                / (S::from_int(3) * a3);
            d[2] = S::from_int(2) * half.clone();
            one_step_combination(&half, 3, order)
        }
        _ => {
            let top = k - 2;
            let even_top = if top.is_multiple_of(2) { top } else { top - 1 };
            let odd_top = if top % 2 == 1 { top } else { top - 1 };
            let even_sum = (2..=even_top)
                .step_by(2)
                .fold(S::zero(), |acc, i| acc + binomial::<S>(top, i));
            let prod = (1..=top).fold(S::one(), |acc, j| {
                let ja = S::from_int(j as i64) * a.clone();
                acc * (ja.clone() - one.clone()) / ja
            });
            let half = S::from_int(2).powi(top as u32) * prod / (S::from_int(k as i64 - 1) * even_sum);
            let s = S::from_int(2) * half.clone();
            let lin = S::from_int(2) / S::from_int(top as i64);
            d[0] = -lin.clone();
            for mu in (2..=top).step_by(2) {
                d[mu - 1] = s.clone();
            }
            sigma = Some(s);
            xi = Some(even_top);
            omega = Some(odd_top);
            // (1 - lin - half) + lin (1 - z) + half (1 + z^2)/(1 - z^2)
            let even_kernel = rotated_kernel::<S>(2, false, order);
            even_kernel.map_indexed(|i, c| match i {
                0 => Complex::one(),
                1 => Complex::new(-lin.clone(), S::zero()),
                _ => c * half.clone(),
            })
        }
    };
    let scheme = GammaScheme {
        k,
        alpha: alpha.clone(),
        m_max,
        gammas,
        d,
        sigma,
        xi,
        omega,
    };
    Ok((h, scheme))
}

/// Constants `c_k` tabulated for illustration, for `k = 6..=10`, with the
/// `z^2` coefficient of `h_k` stated as
/// `c_k prod_{j=1}^{k-2} (j alpha - 1) / alpha^{k-2}`.
pub const TABULATED_Z2_CONSTANTS: [(usize, i64, i64); 5] = [
    (6, 4, 105),
    (7, 4, 675),
    (8, 8, 10765),
    (9, 2, 19845),
    (10, 4, 360045),
];

/// Comparison of one tabulated constant against the recipe.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedAudit {
    pub k: usize,
    pub tabulated: Rational,
    /// The `z^2` coefficient `sigma` of `h_k`, as a constant.
    pub recipe_sigma: Rational,
    /// `sigma / 2`, the weight on `(1 + z^2)/(1 - z^2)`.
    pub recipe_half_sigma: Rational,
}

impl TabulatedAudit {
    pub fn matches_sigma(&self) -> bool {
        self.tabulated == self.recipe_sigma
    }

    pub fn matches_half_sigma(&self) -> bool {
        self.tabulated == self.recipe_half_sigma
    }

    /// `tabulated / sigma`.
    pub fn ratio_to_sigma(&self) -> Rational {
        &self.tabulated / &self.recipe_sigma
    }

    pub fn summary(&self) -> String {
        if self.matches_sigma() {
            format!(
                "k={}: tabulated {} equals sigma; the weight sigma/2 = {} differs by a factor 2",
                self.k,
                self.tabulated.render(),
                self.recipe_half_sigma.render()
            )
        } else if self.matches_half_sigma() {
            format!("k={}: tabulated {} equals sigma/2, not the z^2 coefficient sigma = {}",
                self.k, self.tabulated.render(), self.recipe_sigma.render())
        } else {
            format!(
                "k={}: tabulated {} disagrees with sigma = {} (ratio {})",
                self.k,
                self.tabulated.render(),
                self.recipe_sigma.render(),
                self.ratio_to_sigma().render()
            )
        }
    }
}

/// Recomputes the alpha-free constant of the `z^2` coefficient of `h_k` for a
/// tabulated `k` in `6..=10`. `sigma / 2 = 2^{k-2} / ((k-1)! E)` with
/// `E = C(k-2, 2) + C(k-2, 4) + ...`.
pub fn tabulated_z2_audit(k: usize) -> Option<TabulatedAudit> {
    let &(_, num, den) = TABULATED_Z2_CONSTANTS.iter().find(|t| t.0 == k)?;
    let top = k - 2;
    let even_sum = (2..=top)
        .step_by(2)
        .fold(Rational::zero(), |acc, i| acc + binomial::<Rational>(top, i));
    let half = Rational::from_int(2).powi(top as u32) / (factorial::<Rational>(k - 1) * even_sum);
    Some(TabulatedAudit {
        k,
        tabulated: Rational::ratio(num, den),
        recipe_sigma: &half * Rational::from_int(2),
        recipe_half_sigma: half,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caratheodory::{min_real_part, tail_bound};

    type Q = Rational;

    #[test]
    fn gamma_targets() {
        assert_eq!(gamma_target(1, &Q::from_int(7)), Q::one());
        assert_eq!(gamma_target(2, &Q::from_int(2)), Q::ratio(1, 4));
        for m in 2..8 {
            assert!(gamma_target(m, &Q::one()).is_zero());
        }
    }

    #[test]
    fn h2_is_trivial() {
        let (h, s) = build_hk(2, &Q::from_int(2), 6).unwrap();
        assert_eq!(h, TruncatedSeries::one(6));
        assert!(s.d.is_empty());
        assert!(check_eq24(&s, &Q::from_int(2)));
    }

    #[test]
    fn h3_at_alpha_two() {
        let (h, s) = build_hk(3, &Q::from_int(2), 6).unwrap();
        assert_eq!(s.d, vec![Q::from_int(-1)]);
        for j in 1..=6 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            assert_eq!(h.coeff(j), Complex::new(Q::from_int(sign), Q::zero()));
        }
        // Both equations m = 1, 2 hold for k = 3.
        assert!(s.residuals().iter().all(Zero::is_zero));
    }

    #[test]
    fn h4_and_h5_at_alpha_two() {
        let two = Q::from_int(2);
        let (h4, s4) = build_hk(4, &two, 8).unwrap();
        assert_eq!(s4.d, vec![Q::zero(), Q::from_int(-1)]);
        assert_eq!(h4.coeff(2), Complex::new(Q::from_int(-1), Q::zero()));
        assert!(check_eq24(&s4, &two));
        let (h5, s5) = build_hk(5, &two, 8).unwrap();
        assert_eq!(s5.d[2], Q::ratio(-3, 4));
        assert_eq!(h5.coeff(3), Complex::new(Q::ratio(-3, 4), Q::zero()));
        assert!(check_eq24(&s5, &two));
    }

    #[test]
    fn perturbed_scheme_fails() {
        let (_, mut s) = build_hk(4, &2.0, 8).unwrap();
        assert!(check_eq24(&s, &2.0));
        s.d[1] += 1e-3;
        assert!(!check_eq24(&s, &2.0));
    }

    #[test]
    fn lower_equations_are_not_imposed() {
        let (_, s) = build_hk(4, &Q::from_int(2), 8).unwrap();
        let r = s.residuals();
        assert!(r[0].is_zero());
        assert_eq!(r[1], Q::ratio(1, 4));
        assert!(r[2].is_zero());
    }

    #[test]
    fn general_recipe_holds_exactly() {
        for k in 6..=14 {
            for &(num, den) in &[(11, 10), (3, 2), (2, 1), (10, 1)] {
                let alpha = Q::ratio(num, den);
                let (h, s) = build_hk(k, &alpha, k + 4).unwrap();
                assert!(check_eq24(&s, &alpha), "k={k}");
                assert!(s.defining_residual().is_zero());
                assert!(s.max_abs_d() <= Q::from_int(2));
                let sigma = s.sigma.clone().unwrap();
                assert_eq!(h.coeff(2).re, sigma);
                assert_eq!(h.coeff(4).re, sigma);
                assert_eq!(h.coeff(1).re, Q::ratio(-2, k as i64 - 2));
                assert!(h.coeff(3).is_zero());
                assert_eq!(s.xi.unwrap() % 2, 0);
                assert_eq!(s.omega.unwrap() % 2, 1);
            }
        }
    }

    #[test]
    fn hk_has_positive_real_part() {
        let order = 512;
        for k in 2..=12 {
            for &alpha in &[1.1, 1.5, 2.0, 3.0, 5.0, 10.0] {
                let (h, _) = build_hk(k, &alpha, order).unwrap();
                let m = min_real_part(&h, 0.99, 720).unwrap();
                assert!(m >= -tail_bound(0.99, order), "k={k} alpha={alpha}: {m}");
            }
        }
    }

    #[test]
    fn rejects_small_alpha_and_order() {
        assert!(matches!(build_hk(4, &1.0, 8), Err(crate::Error::Domain(_))));
        assert!(matches!(build_hk(8, &2.0, 5), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn tabulated_constants() {
        let audits: Vec<_> = (6..=10).map(|k| tabulated_z2_audit(k).unwrap()).collect();
        for a in &audits {
            assert!(!a.matches_half_sigma());
        }
        let matching: Vec<usize> = audits.iter().filter(|a| a.matches_sigma()).map(|a| a.k).collect();
        assert_eq!(matching, vec![6, 7, 9, 10]);
        assert_eq!(audits[2].recipe_sigma, Q::ratio(8, 9765));
        assert!(tabulated_z2_audit(5).is_none());
    }

    #[test]
    fn tabulated_constant_agrees_with_built_series() {
        // sigma(alpha) = const * prod (j alpha - 1) / alpha^{k-2}.
        let alpha = Q::ratio(7, 3);
        for k in 6..=10 {
            let (h, _) = build_hk(k, &alpha, k + 2).unwrap();
            let prod = (1..=k - 2).fold(Q::one(), |acc, j| acc * (Q::from_int(j as i64) * alpha.clone() - Q::one()));
            let c = h.coeff(2).re / (prod / alpha.powi(k as u32 - 2));
            assert_eq!(c, tabulated_z2_audit(k).unwrap().recipe_sigma);
        }
    }
}
