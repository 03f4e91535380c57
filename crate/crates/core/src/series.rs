//! Truncated formal power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..=c_N`. Every ring
//! operation closes over the same order: products are truncated, never
//! extended, so a caller that needs the coefficient of `z^k` must build
//! its operands with `N >= k`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{domain, usage, Result};
use crate::scalar::{complex_to_f64, real, Coefficient, Scalar};

/// Default truncation order used by the pipelines.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S: Scalar> {
    coeffs: Vec<Coefficient<S>>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients beyond `order`.
    pub fn new(mut coeffs: Vec<Coefficient<S>>, order: usize) -> Self {
        coeffs.resize(order + 1, Complex::zero());
        Self { coeffs }
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: Vec<S>, order: usize) -> Self {
        Self::new(coeffs.into_iter().map(real).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex::one(), order)
    }

    pub fn constant(c: Coefficient<S>, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c z^k`, or the zero series when `k > order`.
    pub fn monomial(c: Coefficient<S>, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from a closure over the index.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Coefficient<S>) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coefficient<S>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Coefficient<S>> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Coefficient<S> {
        self.coeffs.get(k).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-truncates (or zero-pads) to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    fn same_order(&self, other: &Self, op: &str) -> Result<()> {
        if self.order() != other.order() {
            return usage(format!(
                "{op}: order mismatch ({} vs {})",
                self.order(),
                other.order()
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, lambda: &Coefficient<S>) -> Self {
        self.map(|c| c * lambda)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other, "mul")?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let a = &self.coeffs;
        let b = &other.coeffs;
        // Skip leading zeros; generator powers start at z^m.
        let a_lo = a.iter().position(|c| !c.is_zero()).unwrap_or(n + 1);
        let b_lo = b.iter().position(|c| !c.is_zero()).unwrap_or(n + 1);
        Self::from_fn(n, |k| {
            let mut acc = Complex::zero();
            if k >= a_lo + b_lo {
                for j in a_lo..=k - b_lo {
                    acc = acc + &a[j] * &b[k - j];
                }
            }
            acc
        })
    }

    /// `g^m` by the convolution recurrence `c^{(m)}_k = sum_j c_j c^{(m-1)}_{k-j}`.
    /// `m = 0` returns the constant series 1.
    pub fn integer_power(&self, m: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..m {
            acc = self.mul_unchecked(&acc);
        }
        acc
    }

    /// `g^c` for a real exponent, `g_0 = 1`, via
    /// `k u_k = sum_{j=1}^k (j c - (k - j)) g_j u_{k-j}` with `u_0 = 1`.
    pub fn real_power(&self, c: &S) -> Result<Self> {
        if self.coeffs[0] != Complex::one() {
            return domain("real_power requires constant term exactly 1");
        }
        let n = self.order();
        let g = &self.coeffs;
        let mut u: Vec<Coefficient<S>> = Vec::with_capacity(n + 1);
        u.push(Complex::one());
        for k in 1..=n {
            let mut acc = Complex::zero();
            for j in 1..=k {
                if g[j].is_zero() {
                    continue;
                }
                let w = S::from_int(j as i64) * c.clone() - S::from_int((k - j) as i64);
                acc = acc + (&g[j] * &u[k - j]) * w;
            }
            u.push(acc / S::from_int(k as i64));
        }
        Ok(Self { coeffs: u })
    }

    /// Salagean operator `D^n`: `c_k -> k^n c_k`.
    pub fn salagean(&self, n: u32) -> Self {
        self.map_indexed(|k, c| c * S::from_int(k as i64).powi(n))
    }

    /// Horner evaluation in the backend's own arithmetic.
    pub fn evaluate(&self, z: &Coefficient<S>) -> Coefficient<S> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, c| acc * z + c)
    }

    /// Horner evaluation in double precision.
    pub fn evaluate_f64(&self, z: Complex<f64>) -> Complex<f64> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, c| acc * z + complex_to_f64(c))
    }

    /// Multiplies by `z`, dropping the top coefficient.
    pub fn shift_up(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len());
        c.push(Complex::zero());
        c.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs: c }
    }

    /// Divides by `z` (the constant term is discarded); the order drops by one.
    pub fn shift_down(&self) -> Self {
        let order = self.order().saturating_sub(1);
        Self::new(self.coeffs.iter().skip(1).cloned().collect(), order)
    }

    pub fn map(&self, f: impl Fn(&Coefficient<S>) -> Coefficient<S>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn map_indexed(&self, f: impl Fn(usize, &Coefficient<S>) -> Coefficient<S>) -> Self {
        Self {
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| f(k, c)).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Coefficient<S>, &Coefficient<S>) -> Coefficient<S>,
    ) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn to_f64(&self) -> TruncatedSeries<f64> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(complex_to_f64).collect(),
        }
    }

    /// Coefficientwise closeness: equality on exact backends.
    pub fn close_to(&self, other: &Self, rel_tol: f64) -> bool {
        if self.order() != other.order() {
            return false;
        }
        if S::EXACT {
            return self == other;
        }
        let scale = self
            .coeffs
            .iter()
            .chain(&other.coeffs)
            .map(|c| complex_to_f64(c).norm())
            .fold(f64::MIN_POSITIVE, f64::max);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| (complex_to_f64(a) - complex_to_f64(b)).norm() <= rel_tol * scale)
    }
}

/// Free-function form of [`TruncatedSeries::new`].
pub fn make_series<S: Scalar>(coeffs: Vec<Coefficient<S>>, order: usize) -> TruncatedSeries<S> {
    TruncatedSeries::new(coeffs, order)
}
