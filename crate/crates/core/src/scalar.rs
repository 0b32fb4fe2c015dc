//! Scalar field abstraction shared by the exact and floating pipelines.
//!
//! Every tensor in the crate is generic over [`Scalar`]. Two implementations
//! ship: [`Rational`] (arbitrary precision, no rounding) and `f64`. Zero tests
//! go through [`Scalar::is_negligible`], which ignores the tolerance in exact
//! mode.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Default comparison tolerance for floating mode.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Environment variable that overrides [`DEFAULT_EPS`].
pub const EPS_ENV_VAR: &str = "LISTAT_EPS";

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Send
    + Sync
    + 'static
{
    /// `true` for the rounding-free implementation.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact value as a rational (the binary value for `f64`); `None` for
    /// non-finite floats.
    fn to_rational(&self) -> Option<Rational>;
    fn abs(&self) -> Self;

    /// Square root, when it exists in the field (always for `f64 >= 0`,
    /// only for perfect squares over the rationals).
    fn sqrt(&self) -> Option<Self>;

    /// Exactly zero in exact mode, `|x| <= eps` otherwise.
    fn is_negligible(&self, eps: f64) -> bool;

    /// Lossless rendering for reports: `p/q` strings in exact mode, twelve
    /// significant digits otherwise.
    fn render(&self) -> String;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(eps)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = exact_isqrt(self.numer())?;
        let den = exact_isqrt(self.denom())?;
        Some(BigRational::new(num, den))
    }

    fn is_negligible(&self, _eps: f64) -> bool {
        self.is_zero()
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        BigRational::from_float(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn is_negligible(&self, eps: f64) -> bool {
        f64::abs(*self) <= eps
    }

    fn render(&self) -> String {
        render_f64(*self)
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Twelve significant digits, fixed notation in the usual range and
/// scientific notation outside it. Negative zero prints as `0`.
pub fn render_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..12).contains(&mag) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - mag).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Parse a scalar written as an integer, `p/q`, or a decimal literal.
///
/// Decimals are read exactly (`"0.25"` is `1/4`), so the same strings work in
/// both modes.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational or decimal literal: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&all_digits).map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if neg { -value } else { value })
}

/// Parse a literal directly into the requested scalar type.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    parse_rational(text).map(|r| S::from_rational(&r))
}

/// Comparison context: the tolerance used in floating mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Context {
    pub eps: f64,
}

impl Default for Context {
    fn default() -> Self {
        Self { eps: DEFAULT_EPS }
    }
}

impl Context {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Validation(format!("tolerance must be positive, got {eps}")));
        }
        Ok(Self { eps })
    }

    /// Default context with `LISTAT_EPS` applied when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(EPS_ENV_VAR) {
            Ok(v) => {
                let eps: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Validation(format!("{EPS_ENV_VAR}={v:?} is not a number")))?;
                Self::new(eps)
            }
            Err(_) => Ok(Self::default()),
        }
    }
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rational(3, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), rational(-1, 4));
        assert_eq!(parse_rational("1.5e2").unwrap(), rational(150, 1));
        assert_eq!(parse_rational("2E-1").unwrap(), rational(1, 5));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exact_sqrt_only_for_squares() {
        assert_eq!(Scalar::sqrt(&rational(9, 4)), Some(rational(3, 2)));
        assert_eq!(Scalar::sqrt(&rational(2, 1)), None);
        assert_eq!(Scalar::sqrt(&rational(-1, 1)), None);
    }

    #[test]
    fn render_formats() {
        assert_eq!(rational(-3, 4).render(), "-3/4");
        assert_eq!(rational(4, 2).render(), "2");
        assert_eq!(0.5f64.render(), "0.500000000000");
        assert_eq!((-0.0f64).render(), "0");
        assert_eq!(1.0e-7f64.render(), "1.00000000000e-7");
    }

    #[test]
    fn float_tolerance() {
        assert!(1e-10f64.is_negligible(DEFAULT_EPS));
        assert!(!1e-8f64.is_negligible(DEFAULT_EPS));
        assert!(!rational(1, 1_000_000_000_000).is_negligible(1.0));
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(0.6, 1000), Some(rational(3, 5)));
        assert_eq!(rationalize(-2.0 / 7.0, 1000), Some(rational(-2, 7)));
    }

    #[test]
    fn context_rejects_nonpositive() {
        assert!(Context::new(0.0).is_err());
        assert!(Context::new(-1.0).is_err());
        assert_eq!(Context::default().eps, 1e-9);
    }
}
