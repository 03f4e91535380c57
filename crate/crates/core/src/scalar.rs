//! Arithmetic backends.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Two backends are
//! provided: `f64` for randomized sweeps and [`Rational`] (arbitrary precision
//! `BigRational`) for exact regression fixtures. Complex coefficients are
//! `num_complex::Complex<S>`.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Complex coefficient over a scalar backend.
pub type Coefficient<S> = Complex<S>;

/// Relative tolerance used by the float backend for coefficient identities.
pub const FLOAT_REL_TOL: f64 = 1e-10;

/// Absolute tolerance for unimodularity and weight normalization on floats.
pub const FLOAT_UNIT_TOL: f64 = 1e-12;

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// True when +, -, *, / never round.
    const EXACT: bool;
    /// Backend name as used on the command line.
    const NAME: &'static str;

    fn from_int(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn to_f64(&self) -> f64;

    /// Nearest value to `v` whose denominator is at most `max_den`
    /// (identity on floats).
    fn approx_f64(v: f64, max_den: u32) -> Self;

    /// Parses decimals (`1.1`), integers and fractions (`3/2`).
    fn parse(s: &str) -> Result<Self>;

    /// Exact fraction string on the rational backend, 17 significant digits
    /// on floats.
    fn render(&self) -> String;

    /// |z|. Exact on the rational backend when z is real, purely imaginary,
    /// or |z|^2 is a perfect rational square; otherwise a rational
    /// approximation of the float modulus.
    fn modulus(z: &Complex<Self>) -> Self;

    /// e^{2 pi i j / q}, or `None` when the backend cannot represent it.
    fn root_of_unity(j: u64, q: u64) -> Option<Complex<Self>>;

    /// `a == b` on exact backends, relative closeness otherwise.
    fn close(a: &Self, b: &Self, rel_tol: f64) -> bool;

    fn powi(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }

    /// Integer powers including negative exponents.
    fn powz(&self, e: i64) -> Self {
        if e >= 0 {
            self.powi(e as u32)
        } else {
            Self::one() / self.powi((-e) as u32)
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn approx_f64(v: f64, _max_den: u32) -> Self {
        v
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num.trim().parse().map_err(|_| bad_literal(s))?;
            let den: f64 = den.trim().parse().map_err(|_| bad_literal(s))?;
            if den == 0.0 {
                return Err(bad_literal(s));
            }
            return Ok(num / den);
        }
        let v: f64 = s.parse().map_err(|_| bad_literal(s))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad_literal(s))
        }
    }

    fn render(&self) -> String {
        format!("{:.16e}", self)
    }

    fn modulus(z: &Complex<Self>) -> Self {
        z.norm()
    }

    fn root_of_unity(j: u64, q: u64) -> Option<Complex<Self>> {
        if q == 0 {
            return None;
        }
        let j = j % q;
        // Exact values on the axes keep the extremal generators clean.
        if (4 * j).is_multiple_of(q) {
            return Some(match 4 * j / q {
                0 => Complex::new(1.0, 0.0),
                1 => Complex::new(0.0, 1.0),
                2 => Complex::new(-1.0, 0.0),
                _ => Complex::new(0.0, -1.0),
            });
        }
        let theta = std::f64::consts::TAU * j as f64 / q as f64;
        Some(Complex::new(theta.cos(), theta.sin()))
    }

    fn close(a: &Self, b: &Self, rel_tol: f64) -> bool {
        let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        (a - b).abs() <= rel_tol * scale
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn approx_f64(v: f64, max_den: u32) -> Self {
        let den = max_den.max(1) as f64;
        let num = (v * den).round();
        BigRational::new(BigInt::from(num as i64), BigInt::from(max_den.max(1)))
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('/') {
            let r = BigRational::from_str(s).map_err(|_| bad_literal(s))?;
            return Ok(r);
        }
        parse_decimal(s).ok_or_else(|| bad_literal(s))
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn modulus(z: &Complex<Self>) -> Self {
        if z.im.is_zero() {
            return z.re.abs();
        }
        if z.re.is_zero() {
            return z.im.abs();
        }
        let sq = &z.re * &z.re + &z.im * &z.im;
        let (n, d) = (sq.numer(), sq.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            return BigRational::new(rn, rd);
        }
        let approx = Scalar::to_f64(&sq).sqrt();
        BigRational::from_float(approx).unwrap_or_else(Zero::zero)
    }

    fn root_of_unity(j: u64, q: u64) -> Option<Complex<Self>> {
        if q == 0 || !(4 * (j % q)).is_multiple_of(q) {
            return None;
        }
        let (one, zero) = (Self::one(), Self::zero());
        Some(match 4 * (j % q) / q {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        })
    }

    fn close(a: &Self, b: &Self, _rel_tol: f64) -> bool {
        a == b
    }
}

fn bad_literal(s: &str) -> Error {
    Error::Parse(format!("invalid scalar literal {s:?}"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(num, den);
    Some(if neg { -r } else { r })
}

/// Converts a complex coefficient to double precision.
pub fn complex_to_f64<S: Scalar>(z: &Complex<S>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// Real scalar lifted to a complex coefficient.
pub fn real<S: Scalar>(v: S) -> Complex<S> {
    Complex::new(v, S::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parses_decimals_exactly() {
        assert_eq!(Rational::parse("1.1").unwrap(), Rational::ratio(11, 10));
        assert_eq!(Rational::parse("-0.25").unwrap(), Rational::ratio(-1, 4));
        assert_eq!(Rational::parse("3/2").unwrap(), Rational::ratio(3, 2));
        assert_eq!(Rational::parse("7").unwrap(), Rational::from_int(7));
        assert!(Rational::parse("1e3").is_err());
        assert!(Rational::parse("").is_err());
    }

    #[test]
    fn float_parses_fractions() {
        assert_eq!(f64::parse("3/4").unwrap(), 0.75);
        assert!(f64::parse("1/0").is_err());
        assert!(f64::parse("nan").is_err());
    }

    #[test]
    fn render_formats() {
        assert_eq!(Rational::ratio(2, 3).render(), "2/3");
        assert_eq!(Rational::from_int(-4).render(), "-4");
        assert_eq!(0.5f64.render(), "5.0000000000000000e-1");
    }

    #[test]
    fn rational_modulus_exact_on_pythagorean_points() {
        let z = Complex::new(Rational::ratio(3, 5), Rational::ratio(4, 5));
        assert_eq!(Rational::modulus(&z), Rational::one());
        let w = Complex::new(Rational::zero(), Rational::ratio(-2, 3));
        assert_eq!(Rational::modulus(&w), Rational::ratio(2, 3));
    }

    #[test]
    fn roots_of_unity() {
        assert!(Rational::root_of_unity(1, 3).is_none());
        assert_eq!(
            Rational::root_of_unity(1, 2).unwrap(),
            Complex::new(Rational::from_int(-1), Rational::zero())
        );
        let w = f64::root_of_unity(1, 3).unwrap();
        assert!((w.powu(3) - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(f64::root_of_unity(3, 4).unwrap(), Complex::new(0.0, -1.0));
    }

    #[test]
    fn negative_integer_powers() {
        assert_eq!(Rational::ratio(2, 1).powz(-3), Rational::ratio(1, 8));
        assert_eq!(2.0f64.powz(0), 1.0);
    }
}
