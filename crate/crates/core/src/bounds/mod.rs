//! Coefficient machinery of the class `T_n^alpha(beta)`: normalized analytic
//! `f(z) = z + a_2 z^2 + ...` with `Re D^n(f^alpha) / (alpha^n z^alpha) > beta`.
//!
//! * [`reconstruct`]: `f` from its Carathéodory generator, and `a_k` by the
//!   power-sum formula.
//! * [`theorems`]: the sharp bound for `alpha > 1`, the region-dependent
//!   bound for small `alpha`, the exponential estimate, extremal generators.
//! * [`gamma`]: the gamma-scheme and the auxiliary functions `h_k`.
//! * [`nehari`]: the alternating power series whose coefficients the
//!   Nehari-Netanyahu argument bounds.
//! * [`report`]: per-coefficient bound reports.

pub mod gamma;
pub mod nehari;
pub mod reconstruct;
pub mod report;
pub mod theorems;

use crate::caratheodory::{check_beta, TransformParams};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

pub use gamma::{build_hk, check_eq24, gamma_target, tabulated_z2_audit, GammaScheme, TabulatedAudit};
pub use nehari::{corollary1_bound, nehari_gammas, nehari_series};
pub use reconstruct::{a_k_direct, f_from_atoms, f_from_p, verify_membership};
pub use report::{bound_report, BoundReport, BoundSource};
pub use theorems::{
    classify_region, extremal_p, extremal_series, sharp_bound, theorem1_bound, theorem2_estimate,
    RegionTag, Theorem1Bound,
};

/// The triple `(n, alpha, beta)` selecting `T_n^alpha(beta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassParams<S: Scalar> {
    pub n: u32,
    pub alpha: S,
    pub beta: S,
}

impl<S: Scalar> ClassParams<S> {
    pub fn new(n: u32, alpha: S, beta: S) -> Result<Self> {
        if alpha <= S::zero() {
            return domain(format!("alpha must be positive, got {alpha}"));
        }
        check_beta(&beta)?;
        Ok(Self { n, alpha, beta })
    }

    pub fn transform(&self) -> TransformParams<S> {
        TransformParams {
            n: self.n,
            alpha: self.alpha.clone(),
        }
    }

    /// `1 - beta`.
    pub(crate) fn one_minus_beta(&self) -> S {
        S::one() - self.beta.clone()
    }
}

/// `C(m, mu)` in the backend's arithmetic.
pub(crate) fn binomial<S: Scalar>(m: usize, mu: usize) -> S {
    if mu > m {
        return S::zero();
    }
    let mu = mu.min(m - mu);
    (0..mu).fold(S::one(), |acc, i| {
        acc * S::from_int((m - i) as i64) / S::from_int((i + 1) as i64)
    })
}

/// `m!` in the backend's arithmetic.
pub(crate) fn factorial<S: Scalar>(m: usize) -> S {
    (1..=m).fold(S::one(), |acc, i| acc * S::from_int(i as i64))
}
