//! Per-coefficient bound reports.

use num_complex::Complex;

use super::theorems::{classify_region, sharp_bound, theorem1_bound, RegionTag};
use super::ClassParams;
use crate::error::{usage, Result};
use crate::scalar::{Scalar, FLOAT_REL_TOL};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum BoundSource {
    /// Region-dependent bound for small alpha.
    Theorem1,
    /// Sharp bound for alpha > 1.
    Theorem3,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundSource::Theorem1 => "Theorem1",
            BoundSource::Theorem3 => "Theorem3",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<S: Scalar> {
    pub k: usize,
    pub a_k_abs: S,
    pub bound: S,
    pub bound_source: BoundSource,
    /// False when the chosen formula is outside the range where it is
    /// claimed (the `alpha > 1` bound evaluated at `alpha <= 1` outside all
    /// small-alpha regions).
    pub applicable: bool,
    pub region: RegionTag,
    /// `bound - |a_k|`.
    pub margin: S,
    /// `|a_k|` equals the bound (exactly on rationals, to 1e-10 relative on
    /// floats).
    pub sharp_hit: bool,
}

/// Picks the applicable bound for `a_k`: the sharp bound when `alpha > 1`,
/// otherwise the region bound when `(alpha, k)` lies in a region, otherwise
/// the sharp-bound formula flagged as not applicable.
pub fn bound_report<S: Scalar>(
    f: &TruncatedSeries<S>,
    params: &ClassParams<S>,
    k: usize,
) -> Result<BoundReport<S>> {
    if k < 2 || k > f.order() {
        return usage(format!("k = {k} outside 2..={}", f.order()));
    }
    let a_k: Complex<S> = f.coeff(k);
    let region = classify_region(&params.alpha, k);
    let (bound, bound_source, applicable) = if params.alpha > S::one() {
        (sharp_bound(params, k), BoundSource::Theorem3, true)
    } else {
        match theorem1_bound(params, k)?.value {
            Some(v) => (v, BoundSource::Theorem1, true),
            None => (sharp_bound(params, k), BoundSource::Theorem3, false),
        }
    };
    let a_k_abs = S::modulus(&a_k);
    let sharp_hit = if S::EXACT {
        !bound.is_negative() && a_k.norm_sqr() == bound.clone() * bound.clone()
    } else {
        S::close(&a_k_abs, &bound, FLOAT_REL_TOL)
    };
    Ok(BoundReport {
        k,
        margin: bound.clone() - a_k_abs.clone(),
        a_k_abs,
        bound,
        bound_source,
        applicable,
        region,
        sharp_hit,
    })
}
