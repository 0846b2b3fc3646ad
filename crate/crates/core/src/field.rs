//! The two exact coefficient fields used throughout: Q and F_p.
//!
//! Polynomials and matrices are generic over a small field-object trait
//! rather than over the element type alone, because an F_p element does
//! not know its modulus. Field objects are tiny `Copy` values that get
//! stored inside every polynomial and matrix.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeff::is_prime;
use crate::rational::Rational;

pub trait Field: Copy + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static;

    fn zero(self) -> Self::Elem;
    fn one(self) -> Self::Elem;
    fn is_zero(self, a: &Self::Elem) -> bool;
    fn add(self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(self, a: &Self::Elem) -> Self::Elem;
    fn mul(self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(self, n: i64) -> Self::Elem;

    fn div(self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The rational numbers, with `Rational` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(self) -> Rational {
        Rational::zero()
    }
    fn one(self) -> Rational {
        Rational::one()
    }
    fn is_zero(self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(self, a: &Rational) -> Rational {
        -a
    }
    fn mul(self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
}

/// The prime field F_p with elements stored as canonical residues in
/// `[0, p)`. `p` is restricted to 31 bits so that sums stay inside u64
/// and products inside u128.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p <= (1 << 31), "prime {p} exceeds the machine-word cap");
        assert!(is_prime(p), "{p} is not prime");
        PrimeField { p }
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Reduces an arbitrary big integer into `[0, p)`.
    pub fn from_bigint(self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(self) -> u64 {
        0
    }
    fn one(self) -> u64 {
        1 % self.p
    }
    fn is_zero(self, a: &u64) -> bool {
        *a == 0
    }
    fn add(self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_i64(self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}
