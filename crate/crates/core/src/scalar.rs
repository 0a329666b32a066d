//! Exact ordered-field scalars.
//!
//! Everything that touches real numbers is written against [`ExactScalar`]
//! rather than a concrete rational type. The trait is implemented for every
//! `Ratio<T>` over a signed integer type, so both arbitrary precision
//! (`BigRational`) and fixed-width (`Ratio<i64>`, `Ratio<i128>`) rationals
//! work. Floating point types are deliberately not implementations: the
//! correctness inequalities of the realizers only hold in exact arithmetic.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::ParseScalarError;

/// Largest decimal exponent accepted by [`ExactScalar::parse_exact`].
pub const MAX_DECIMAL_EXPONENT: i64 = 4096;

pub trait ExactScalar: Clone + Ord + Signed + Debug + Display + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    /// `numer / denom`. Panics on a zero denominator.
    fn ratio(numer: i64, denom: i64) -> Self;

    /// `2^exp` for any signed exponent.
    fn pow2(exp: i64) -> Self;

    /// Canonical `p/q` form with `q > 0` and `gcd(p, q) = 1`. Integers keep
    /// the `/1` suffix.
    fn canonical(&self) -> String;

    /// Reads `p/q`, integer and decimal literals (with optional exponent),
    /// converting decimals exactly.
    fn parse_exact(s: &str) -> Result<Self, ParseScalarError>;

    /// Nearest integer multiple of `step`, rounding half away from zero.
    fn round_to_multiple(&self, step: &Self) -> Self;

    /// Reduced numerator and denominator, if both fit in `i64`.
    fn parts_i64(&self) -> Option<(i64, i64)>;
}

impl<T> ExactScalar for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + Display + FromStr + Debug + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(int::<T>(v))
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(int::<T>(numer), int::<T>(denom))
    }

    fn pow2(exp: i64) -> Self {
        let two = int::<T>(2);
        let p = num_traits::pow(two, exp.unsigned_abs() as usize);
        if exp >= 0 {
            Ratio::from_integer(p)
        } else {
            Ratio::new(T::one(), p)
        }
    }

    fn canonical(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_exact(s: &str) -> Result<Self, ParseScalarError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_int::<T>(p.trim(), s)?;
            let q = parse_int::<T>(q.trim(), s)?;
            if q.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(s.to_string()));
            }
            return Ok(Ratio::new(p, q));
        }
        parse_decimal(s)
    }

    fn round_to_multiple(&self, step: &Self) -> Self {
        (self.clone() / step.clone()).round() * step.clone()
    }

    fn parts_i64(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }
}

fn int<T: FromPrimitive>(v: i64) -> T {
    T::from_i64(v).expect("integer type cannot hold a small constant")
}

fn parse_int<T: FromStr>(digits: &str, whole: &str) -> Result<T, ParseScalarError> {
    let body = digits.strip_prefix(['+', '-']).unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    let digits = digits.strip_prefix('+').unwrap_or(digits);
    digits
        .parse::<T>()
        .map_err(|_| ParseScalarError::Malformed(whole.to_string()))
}

fn parse_decimal<T>(s: &str) -> Result<Ratio<T>, ParseScalarError>
where
    T: Clone + Integer + Signed + FromPrimitive + FromStr,
{
    let malformed = || ParseScalarError::Malformed(s.to_string());
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e = &s[i + 1..];
            let e_body = e.strip_prefix(['+', '-']).unwrap_or(e);
            if e_body.is_empty() || !e_body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            let e: i64 = e
                .strip_prefix('+')
                .unwrap_or(e)
                .parse()
                .map_err(|_| ParseScalarError::ExponentRange(s.to_string()))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(malformed());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let scale = exponent - frac.len() as i64;
    if scale.abs() > MAX_DECIMAL_EXPONENT {
        return Err(ParseScalarError::ExponentRange(s.to_string()));
    }
    let digits = format!("{whole}{frac}");
    let mut value: T = digits.parse().map_err(|_| malformed())?;
    if negative {
        value = T::zero() - value;
    }
    let ten = int::<T>(10);
    let power = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        Ratio::from_integer(value * power)
    } else {
        Ratio::new(value, power)
    })
}

/// `min(a, b)` by value.
pub fn min<S: ExactScalar>(a: S, b: S) -> S {
    if a <= b {
        a
    } else {
        b
    }
}
