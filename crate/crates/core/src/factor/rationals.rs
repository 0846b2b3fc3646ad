//! Factorization over Q: clear denominators into a monic integer
//! polynomial, Yun squarefree decomposition, factor modulo a good
//! prime, Hensel lift past the Landau-Mignotte bound, and recombine
//! factor subsets (Zassenhaus).

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::hensel::{
    zdiv_exact, zp_balanced, zp_deg, zp_mul, zp_reduce, zp_trim, zpoly_to_fp, ZPoly,
};
use super::{hensel_lift_factorization, FactorError, DEGREE_CAP};
use crate::coeff::is_prime;
use crate::field::{PrimeField, Rationals};
use crate::poly::Poly;
use crate::rational::{lcm_denominators, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct QFactorization {
    /// The constant making the monic factor product equal the input.
    pub unit: Rational,
    /// Monic irreducible factors with multiplicities, sorted by degree
    /// then coefficients.
    pub factors: Vec<(Poly<Rationals>, u32)>,
}

impl QFactorization {
    pub fn product(&self) -> Poly<Rationals> {
        let mut acc = Poly::constant(Rationals, self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

pub fn factor_poly_rationals(f: &Poly<Rationals>) -> Result<QFactorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let n = f.deg().unwrap();
    if n > DEGREE_CAP {
        return Err(FactorError::DegreeCap {
            degree: n,
            cap: DEGREE_CAP,
        });
    }
    let unit = f.lc().unwrap().clone();
    if n == 0 {
        return Ok(QFactorization {
            unit,
            factors: Vec::new(),
        });
    }
    let monic = f.monic();

    // Substitute y = b x: b^n f(y/b) has coefficient c_i * b^(n-i),
    // which is integer and monic when b clears every denominator.
    let b = lcm_denominators(monic.coeffs().iter());
    let shifted: ZPoly = {
        let mut bpow = vec![BigInt::one()];
        for _ in 0..n {
            let last = bpow.last().unwrap() * &b;
            bpow.push(last);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for (i, c) in monic.coeffs().iter().enumerate() {
            let v = c * Rational::from_integer(bpow[n - i].clone());
            debug_assert!(v.denom().is_one());
            out.push(v.numer().clone());
        }
        zp_trim(out)
    };
    debug_assert!(shifted.last().unwrap().is_one());

    let mut factors: Vec<(Poly<Rationals>, u32)> = Vec::new();
    let as_q = zpoly_to_q(&shifted);
    for (piece, mult) in yun_squarefree(&as_q) {
        let piece_z = q_to_zpoly(&piece);
        for irr in factor_squarefree_monic_int(&piece_z)? {
            // Map back through x -> b x and renormalize to monic.
            let q = zpoly_to_q(&irr);
            let back = q.scale_arg(&Rational::from_integer(b.clone())).monic();
            factors.push((back, mult));
        }
    }
    factors.sort_by(|x, y| {
        let kx: Vec<Rational> = x.0.coeffs().to_vec();
        let ky: Vec<Rational> = y.0.coeffs().to_vec();
        (kx.len(), kx).cmp(&(ky.len(), ky))
    });
    let result = QFactorization { unit, factors };
    debug_assert_eq!(result.product(), *f);
    Ok(result)
}

fn zpoly_to_q(f: &[BigInt]) -> Poly<Rationals> {
    Poly::from_coeffs(
        Rationals,
        f.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

/// Only valid when all denominators are 1.
fn q_to_zpoly(f: &Poly<Rationals>) -> ZPoly {
    zp_trim(
        f.coeffs()
            .iter()
            .map(|c| {
                debug_assert!(c.denom().is_one());
                c.numer().clone()
            })
            .collect(),
    )
}

/// Yun's squarefree decomposition in characteristic zero; input monic.
fn yun_squarefree(f: &Poly<Rationals>) -> Vec<(Poly<Rationals>, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let fd = f.derivative();
    let a0 = f.gcd(&fd);
    if a0.is_one() {
        out.push((f.clone(), 1));
        return out;
    }
    let mut b = f.divmod(&a0).0;
    let mut c = fd.divmod(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    while !b.is_one() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.divmod(&a).0;
        c = d.divmod(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Smallest prime >= 5 such that f stays squarefree mod p (equivalently
/// p does not divide the discriminant); retries upward on failure.
fn good_prime(f: &[BigInt]) -> Result<u64, FactorError> {
    let mut p = 5u64;
    let mut tried = 0;
    while tried < 1000 {
        if is_prime(p) {
            tried += 1;
            let field = PrimeField::new(p);
            let fp = zpoly_to_fp(f, field);
            if fp.deg() == zp_deg(f) {
                let g = fp.gcd(&fp.derivative());
                if g.is_one() {
                    return Ok(p);
                }
            }
        }
        p += 2;
    }
    Err(FactorError::NoGoodPrime)
}

/// Factors a monic squarefree integer polynomial into monic integer
/// irreducibles.
fn factor_squarefree_monic_int(f: &ZPoly) -> Result<Vec<ZPoly>, FactorError> {
    let n = zp_deg(f).expect("nonzero input");
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    let p = good_prime(f)?;
    let field = PrimeField::new(p);
    let modular = super::factor_poly_mod_p(&zpoly_to_fp(f, field)).expect("nonzero");
    debug_assert!(modular.factors.iter().all(|(_, m)| *m == 1));
    let local: Vec<Poly<PrimeField>> =
        modular.factors.into_iter().map(|(g, _)| g).collect();
    if local.len() == 1 {
        return Ok(vec![f.clone()]);
    }

    // Landau-Mignotte: any monic divisor of f has coefficients bounded
    // by 2^n * ||f||_2.
    let norm2: BigInt = {
        let sum: BigInt = f.iter().map(|c| c * c).sum();
        sum.sqrt() + 1
    };
    let bound: BigInt = (BigInt::one() << n) * norm2;
    let target = &bound * 2 + 1;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk < target {
        pk *= p;
        k += 1;
    }

    let lifted = hensel_lift_factorization(f, &local, p, k)?;
    Ok(recombine(f, lifted, &pk))
}

/// Zassenhaus subset recombination: scan subsets of the lifted modular
/// factors by increasing cardinality; a balanced product that divides
/// the remaining polynomial over Z is an irreducible factor.
fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut active: Vec<ZPoly> = lifted;
    let mut remaining = f.clone();
    let mut found: Vec<ZPoly> = Vec::new();
    let mut s = 1usize;
    while 2 * s <= active.len() {
        let mut hit: Option<(Vec<usize>, ZPoly, ZPoly)> = None;
        'combos: for combo in (0..active.len()).combinations(s) {
            let degree_sum: usize = combo.iter().map(|&i| zp_deg(&active[i]).unwrap()).sum();
            if degree_sum * 2 > zp_deg(&remaining).unwrap() {
                continue;
            }
            let mut prod: ZPoly = vec![BigInt::one()];
            for &i in &combo {
                prod = zp_reduce(&zp_mul(&prod, &active[i]), modulus);
            }
            let cand = zp_balanced(&prod, modulus);
            // Constant-term screen before the full trial division.
            let c0 = cand.first().cloned().unwrap_or_default();
            let r0 = remaining.first().cloned().unwrap_or_default();
            if !r0.is_zero() && (c0.is_zero() || !(&r0 % &c0).is_zero()) {
                continue;
            }
            if let Some(quot) = zdiv_exact(&remaining, &cand) {
                hit = Some((combo, cand, quot));
                break 'combos;
            }
        }
        match hit {
            Some((combo, cand, quot)) => {
                found.push(cand);
                remaining = quot;
                for &i in combo.iter().rev() {
                    active.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if zp_deg(&remaining).unwrap_or(0) > 0 {
        found.push(remaining);
    }
    found
}
