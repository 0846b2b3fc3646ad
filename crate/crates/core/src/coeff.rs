//! Coefficient-ring descriptors: Z, Q, F_p, and localizations Z[S^-1].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffError {
    #[error("membership of a rational in a prime field is not defined")]
    PrimeFieldMembership,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed coefficient-ring string {0:?} (expected \"Z\", \"Q\", or \"Z[1/p,...]\")")]
    Malformed(String),
}

/// Which ring the coefficients of a [`crate::RingElement`] live in.
///
/// `Localized(S)` is the subring of Q whose denominators factor entirely
/// over the finite prime set `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
    Localized(BTreeSet<u64>),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn localized(primes: impl IntoIterator<Item = u64>) -> Result<Self, CoeffError> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        for &p in &set {
            if !is_prime(p) {
                return Err(CoeffError::NotPrime(p));
            }
        }
        Ok(CoefficientRing::Localized(set))
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F_{p}"),
            CoefficientRing::Localized(s) => {
                let parts: Vec<String> = s.iter().map(|p| format!("1/{p}")).collect();
                write!(f, "Z[{}]", parts.join(","))
            }
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = CoeffError;

    /// Grammar: `"Z" | "Q" | "Z[1/p1,1/p2,...]"` with every `p_i` prime.
    /// Prime fields are internal-only and deliberately not parseable.
    fn from_str(s: &str) -> Result<Self, CoeffError> {
        let s = s.trim();
        match s {
            "Z" => return Ok(CoefficientRing::Integers),
            "Q" => return Ok(CoefficientRing::Rationals),
            _ => {}
        }
        let body = s
            .strip_prefix("Z[")
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| CoeffError::Malformed(s.to_string()))?;
        let mut primes = BTreeSet::new();
        for part in body.split(',') {
            let p: u64 = part
                .trim()
                .strip_prefix("1/")
                .and_then(|n| n.trim().parse().ok())
                .ok_or_else(|| CoeffError::Malformed(s.to_string()))?;
            if !is_prime(p) {
                return Err(CoeffError::NotPrime(p));
            }
            primes.insert(p);
        }
        if primes.is_empty() {
            return Err(CoeffError::Malformed(s.to_string()));
        }
        Ok(CoefficientRing::Localized(primes))
    }
}

/// Does `q` lie in the coefficient ring `r`?
///
/// Integers: denominator 1. Rationals: always. Localized(S): every prime
/// factor of the denominator lies in S. Prime fields are rejected.
pub fn localization_membership(q: &Rational, r: &CoefficientRing) -> Result<bool, CoeffError> {
    match r {
        CoefficientRing::Rationals => Ok(true),
        CoefficientRing::Integers => Ok(q.denom().is_one()),
        CoefficientRing::Localized(s) => {
            let mut den = q.denom().clone();
            for &p in s {
                let p = BigInt::from(p);
                while (&den % &p).is_zero() {
                    den /= &p;
                }
            }
            Ok(den.is_one())
        }
        CoefficientRing::PrimeField(_) => Err(CoeffError::PrimeFieldMembership),
    }
}
