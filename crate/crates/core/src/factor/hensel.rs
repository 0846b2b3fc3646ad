//! Quadratic Hensel lifting of coprime monic factorizations from mod p
//! to mod p^k, over dense big-integer polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::FactorError;
use crate::field::PrimeField;
use crate::poly::Poly;

/// Dense integer polynomial, lowest degree first, trailing zeros
/// trimmed.
pub type ZPoly = Vec<BigInt>;

pub(crate) fn zp_trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub(crate) fn zp_deg(f: &[BigInt]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub(crate) fn zp_is_monic(f: &[BigInt]) -> bool {
    f.last().is_some_and(|c| c.is_one())
}

/// Canonical representatives in `[0, m)`.
pub(crate) fn zp_reduce(f: &[BigInt], m: &BigInt) -> ZPoly {
    zp_trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

trait ModFloor {
    fn mod_floor(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// Symmetric representatives in `(-m/2, m/2]`.
pub fn zp_balanced(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    zp_trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub(crate) fn zp_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_trim(out)
}

pub(crate) fn zp_sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    zp_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// Division by a monic divisor with coefficients taken mod m.
fn zp_divmod_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let d = zp_deg(b).expect("division by zero polynomial");
    debug_assert!(zp_is_monic(&zp_reduce(b, m)) || b.last().unwrap().is_one());
    let mut rem: Vec<BigInt> = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), zp_reduce(&rem, m));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let q = rem[i].mod_floor(m);
        if q.is_zero() {
            continue;
        }
        quot[i - d] = q.clone();
        for (j, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[i - d + j] -= t;
        }
    }
    (zp_reduce(&quot, m), zp_reduce(&rem, m))
}

/// Exact division over Z by a monic divisor; `None` if not divisible.
pub(crate) fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let d = zp_deg(b)?;
    assert!(zp_is_monic(b), "exact division requires a monic divisor");
    let mut rem: Vec<BigInt> = a.to_vec();
    if rem.len() < b.len() {
        return if rem.iter().all(|c| c.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        quot[i - d] = q.clone();
        for (j, c) in b.iter().enumerate() {
            rem[i - d + j] -= &q * c;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(zp_trim(quot))
    } else {
        None
    }
}

pub(crate) fn zpoly_to_fp(f: &[BigInt], field: PrimeField) -> Poly<PrimeField> {
    Poly::from_coeffs(field, f.iter().map(|c| field.from_bigint(c)).collect())
}

pub(crate) fn fp_to_zpoly(f: &Poly<PrimeField>) -> ZPoly {
    zp_trim(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic Hensel step: from a factorization and Bezout pair valid
/// mod m to one valid mod m^2. All inputs monic except s, t.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zp_reduce(&zp_sub(f, &zp_mul(g, h)), &m2);
    let (q, r) = zp_divmod_monic_mod(&zp_mul(s, &e), h, &m2);
    let g_new = zp_reduce(
        &zp_trim({
            let mut acc = zp_mul(t, &e);
            let qg = zp_mul(&q, g);
            acc = {
                let n = acc.len().max(qg.len()).max(g.len());
                let zero = BigInt::zero();
                (0..n)
                    .map(|i| {
                        g.get(i).unwrap_or(&zero)
                            + acc.get(i).unwrap_or(&zero)
                            + qg.get(i).unwrap_or(&zero)
                    })
                    .collect()
            };
            acc
        }),
        &m2,
    );
    let h_new = {
        let n = h.len().max(r.len());
        let zero = BigInt::zero();
        zp_reduce(
            &(0..n)
                .map(|i| h.get(i).unwrap_or(&zero) + r.get(i).unwrap_or(&zero))
                .collect::<Vec<_>>(),
            &m2,
        )
    };
    // Lift the Bezout pair alongside.
    let b = zp_reduce(
        &zp_sub(
            &{
                let sg = zp_mul(s, &g_new);
                let th = zp_mul(t, &h_new);
                let n = sg.len().max(th.len());
                let zero = BigInt::zero();
                (0..n)
                    .map(|i| sg.get(i).unwrap_or(&zero) + th.get(i).unwrap_or(&zero))
                    .collect::<Vec<_>>()
            },
            &[BigInt::one()],
        ),
        &m2,
    );
    let (c, d) = zp_divmod_monic_mod(&zp_mul(s, &b), &h_new, &m2);
    let s_new = zp_reduce(&zp_sub(s, &d), &m2);
    let t_new = zp_reduce(&zp_sub(&zp_sub(t, &zp_mul(t, &b)), &zp_mul(&c, &g_new)), &m2);
    (g_new, h_new, s_new, t_new)
}

/// Lifts the coprime monic pair (g, h) with f = g h (mod p) to
/// f = g' h' (mod p^k).
fn lift_pair(
    f: &[BigInt],
    g0: &Poly<PrimeField>,
    h0: &Poly<PrimeField>,
    p: u64,
    k: u32,
) -> Result<(ZPoly, ZPoly), FactorError> {
    let field = g0.field();
    let (gcd, s0, _) = g0.xgcd(h0);
    if !gcd.is_one() {
        return Err(FactorError::NotCoprime);
    }
    // Normalize Bezout degrees: deg s < deg h, deg t < deg g.
    let s0 = s0.rem(h0);
    let t0 = {
        // t = (1 - s g)/h exactly over F_p.
        let num = Poly::one(field).sub(&s0.mul(g0));
        let (q, r) = num.divmod(h0);
        debug_assert!(r.is_zero());
        q
    };
    let mut g = fp_to_zpoly(g0);
    let mut h = fp_to_zpoly(h0);
    let mut s = fp_to_zpoly(&s0);
    let mut t = fp_to_zpoly(&t0);
    let mut modulus = BigInt::from(p);
    let target = BigInt::from(p).pow(k);
    while modulus < target {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &modulus);
        modulus = &modulus * &modulus;
    }
    Ok((zp_reduce(&g, &target), zp_reduce(&h, &target)))
}

/// Lifts a list of pairwise coprime monic factors of a monic integer
/// polynomial `f` from mod p to mod p^k.
///
/// Returns factors with balanced coefficients in `(-p^k/2, p^k/2]`; the
/// product of the results equals `f` mod p^k and each result reduces to
/// its input mod p.
pub fn hensel_lift_factorization(
    f: &[BigInt],
    factors: &[Poly<PrimeField>],
    p: u64,
    k: u32,
) -> Result<Vec<ZPoly>, FactorError> {
    let field = PrimeField::new(p);
    if !zp_is_monic(&zp_trim(f.to_vec())) {
        return Err(FactorError::NonMonic);
    }
    if factors.iter().any(|g| !g.is_monic()) {
        return Err(FactorError::NonMonic);
    }
    let mut product = Poly::one(field);
    for g in factors {
        product = product.mul(g);
    }
    if product != zpoly_to_fp(f, field) {
        return Err(FactorError::NotFactorizationModP);
    }
    let target = BigInt::from(p).pow(k);
    let mut out = Vec::with_capacity(factors.len());
    lift_list(f, factors, p, k, &mut out)?;
    return Ok(out.iter().map(|g| zp_balanced(g, &target)).collect());

    fn lift_list(
        f: &[BigInt],
        factors: &[Poly<PrimeField>],
        p: u64,
        k: u32,
        out: &mut Vec<ZPoly>,
    ) -> Result<(), FactorError> {
        let target = BigInt::from(p).pow(k);
        if factors.len() == 1 {
            out.push(zp_reduce(f, &target));
            return Ok(());
        }
        let mid = factors.len() / 2;
        let field = factors[0].field();
        let mut left = Poly::one(field);
        for g in &factors[..mid] {
            left = left.mul(g);
        }
        let mut right = Poly::one(field);
        for g in &factors[mid..] {
            right = right.mul(g);
        }
        let (lifted_left, lifted_right) = lift_pair(f, &left, &right, p, k)?;
        lift_list(&lifted_left, &factors[..mid], p, k, out)?;
        lift_list(&lifted_right, &factors[mid..], p, k, out)
    }
}
