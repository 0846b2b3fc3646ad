//! Arbitrary-precision rationals and their canonical text form.
//!
//! `Rational` is `num_rational::BigRational`: always stored reduced with
//! a positive denominator, which is exactly the invariant the rest of
//! the crate relies on. This module adds the constructors and the
//! `"num/den"` string form used by every JSON schema (rationals are
//! never serialized as floats).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal: {0}")]
    BadInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Canonical text form: `"num"` when the denominator is 1, else `"num/den"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"num"` or `"num/den"`; the result is reduced and the
/// denominator sign is normalized.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| ParseRationalError::BadInteger(num_str.to_string()))?;
    let den: BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| ParseRationalError::BadInteger(den_str.to_string()))?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// Least common multiple of the denominators, always positive.
pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut acc = BigInt::one();
    for q in qs {
        acc = acc.lcm(q.denom());
    }
    acc.abs()
}
