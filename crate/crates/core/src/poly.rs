//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored lowest degree first with the leading
//! coefficient nonzero; the zero polynomial is the empty vector.

use std::fmt;

use num_bigint::BigUint;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero(field: F) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn x(field: F) -> Self {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::from_coeffs(field, vec![c])
    }

    /// Builds from a lowest-degree-first coefficient list, trimming
    /// trailing zeros.
    pub fn from_coeffs(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| *c == self.field.one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, coeffs)
    }

    pub fn mul_scalar(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient. Panics on zero.
    pub fn monic(&self) -> Self {
        let lc = self.lc().expect("monic of zero polynomial").clone();
        self.mul_scalar(&self.field.inv(&lc))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        let f = self.field;
        let d = divisor.deg().expect("division by zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let lead_inv = f.inv(divisor.lc().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if f.is_zero(&rem[i]) {
                continue;
            }
            let q = f.mul(&rem[i], &lead_inv);
            quot[i - d] = q.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = f.mul(&q, b);
                rem[i - d + j] = f.sub(&rem[i - d + j], &t);
            }
        }
        (Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns monic `g` and `(u, v)` with `u*self + v*other = g`.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
        let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            (r0, r1) = (r1, r);
            (u0, u1) = (u1, u);
            (v0, v1) = (v1, v);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let scale = f.inv(r0.lc().unwrap());
        (
            r0.mul_scalar(&scale),
            u0.mul_scalar(&scale),
            v0.mul_scalar(&scale),
        )
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `p(c*x)`: coefficient i is scaled by c^i.
    pub fn scale_arg(&self, c: &F::Elem) -> Self {
        let f = self.field;
        let mut power = f.one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let r = f.mul(a, &power);
                power = f.mul(&power, c);
                r
            })
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `self^exp mod modulus` by binary exponentiation.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Poly::one(self.field);
        let mut base = self.rem(modulus);
        for i in 0..exp.bits() {
            if exp.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
        }
        acc
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::rational::rat;
    use proptest::prelude::*;

    fn qp(coeffs: &[i64]) -> Poly<Rationals> {
        Poly::from_i64(Rationals, coeffs)
    }

    #[test]
    fn degree_and_trim() {
        assert_eq!(qp(&[]).deg(), None);
        assert_eq!(qp(&[0, 0]).deg(), None);
        assert_eq!(qp(&[1, 2, 0]).deg(), Some(1));
    }

    #[test]
    fn divmod_round_trips() {
        let f = qp(&[-1, 0, 0, 0, 0, 0, 1]); // x^6 - 1
        let d = qp(&[-1, 1]); // x - 1
        let (q, r) = f.divmod(&d);
        assert!(r.is_zero());
        assert_eq!(q.mul(&d), f);
    }

    #[test]
    fn gcd_and_xgcd() {
        let a = qp(&[-1, 0, 1]); // x^2 - 1
        let b = qp(&[1, 1]); // x + 1
        assert_eq!(a.gcd(&b), b);
        let c = qp(&[-2, 1]); // x - 2, coprime with b
        let (g, u, v) = b.xgcd(&c);
        assert!(g.is_one());
        assert_eq!(u.mul(&b).add(&v.mul(&c)), Poly::one(Rationals));
    }

    #[test]
    fn eval_and_scale() {
        let p = qp(&[1, 2, 3]); // 3x^2 + 2x + 1
        assert_eq!(p.eval(&rat(2, 1)), rat(17, 1));
        let scaled = p.scale_arg(&rat(2, 1)); // 12x^2 + 4x + 1
        assert_eq!(scaled, qp(&[1, 4, 12]));
    }

    #[test]
    fn mod_p_pow() {
        let f = PrimeField::new(5);
        let m = Poly::from_i64(f, &[1, 0, 1]); // x^2 + 1 over F_5
        let x = Poly::x(f);
        // x^4 mod (x^2+1) = 1 because x^2 = -1.
        let r = x.pow_mod(&BigUint::from(4u32), &m);
        assert!(r.is_one());
    }

    proptest! {
        #[test]
        fn divmod_identity(av in proptest::collection::vec(-6i64..7, 0..7),
                           bv in proptest::collection::vec(-6i64..7, 1..5)) {
            let a = qp(&av);
            let b = qp(&bv);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.deg().map_or(true, |d| d < b.deg().unwrap()));
        }

        #[test]
        fn xgcd_bezout_mod_p(av in proptest::collection::vec(0i64..7, 1..6),
                             bv in proptest::collection::vec(0i64..7, 1..6)) {
            let f = PrimeField::new(7);
            let a = Poly::from_i64(f, &av);
            let b = Poly::from_i64(f, &bv);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (g, u, v) = a.xgcd(&b);
            prop_assert_eq!(u.mul(&a).add(&v.mul(&b)), g.clone());
            prop_assert!(a.rem(&g).is_zero());
            prop_assert!(b.rem(&g).is_zero());
        }
    }
}
