//! Factorization over F_p: squarefree decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting (trace-map
//! variant for p = 2).

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FactorError;
use crate::field::PrimeField;
use crate::poly::Poly;

/// Fixed seed for the equal-degree splitting element sequence, so runs
/// are reproducible.
const FACTOR_SEED: u64 = 0x5eed_fac7;

#[derive(Debug, Clone, PartialEq)]
pub struct FpFactorization {
    /// Leading coefficient of the input.
    pub unit: u64,
    /// Monic irreducible factors with multiplicities, sorted by degree
    /// then coefficients.
    pub factors: Vec<(Poly<PrimeField>, u32)>,
}

impl FpFactorization {
    pub fn product(&self, field: PrimeField) -> Poly<PrimeField> {
        let mut acc = Poly::constant(field, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

pub fn factor_poly_mod_p(f: &Poly<PrimeField>) -> Result<FpFactorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let field = f.field();
    let unit = *f.lc().unwrap();
    let monic = f.monic();
    let mut factors: Vec<(Poly<PrimeField>, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    for (piece, mult) in squarefree_decomposition(&monic) {
        for (product, d) in distinct_degree(&piece) {
            for irr in equal_degree(&product, d, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        (a.0.coeffs().len(), a.0.coeffs()).cmp(&(b.0.coeffs().len(), b.0.coeffs()))
    });
    debug_assert_eq!(
        FpFactorization { unit, factors: factors.clone() }.product(field),
        *f
    );
    Ok(FpFactorization { unit, factors })
}

/// Writes a monic `f` as a product of pairwise coprime squarefree
/// polynomials with multiplicities. Handles the characteristic-p
/// degeneracy f' = 0 via p-th root extraction.
fn squarefree_decomposition(f: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, u32)> {
    let mut out = Vec::new();
    recurse(f, 1, &mut out);
    return out;

    fn recurse(f: &Poly<PrimeField>, scale: u32, out: &mut Vec<(Poly<PrimeField>, u32)>) {
        if f.is_constant() {
            return;
        }
        let fd = f.derivative();
        if fd.is_zero() {
            recurse(&pth_root(f), scale * f.field().p() as u32, out);
            return;
        }
        let mut c = f.gcd(&fd);
        let mut w = f.divmod(&c).0;
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divmod(&y).0;
            if !z.is_constant() {
                out.push((z, i * scale));
            }
            c = c.divmod(&y).0;
            w = y;
            i += 1;
        }
        if !c.is_constant() {
            recurse(&pth_root(&c), scale * f.field().p() as u32, out);
        }
    }
}

/// For f with f' = 0 over F_p, f(x) = g(x^p) = g(x)^p; extracts g.
fn pth_root(f: &Poly<PrimeField>) -> Poly<PrimeField> {
    let field = f.field();
    let p = field.p() as usize;
    let coeffs: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
    debug_assert!(f
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| i % p == 0 || *c == 0));
    Poly::from_coeffs(field, coeffs)
}

/// Splits a monic squarefree polynomial into (product of all irreducible
/// factors of degree d, d) pairs.
fn distinct_degree(f: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, usize)> {
    let field = f.field();
    let p = BigUint::from(field.p());
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rem = f.clone();
    let mut h = x.rem(&rem);
    let mut d = 0;
    while rem.deg().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rem.deg().unwrap() {
            let deg = rem.deg().unwrap();
            out.push((rem, deg));
            break;
        }
        h = h.pow_mod(&p, &rem);
        let g = h.sub(&x).gcd(&rem);
        if !g.is_constant() {
            rem = rem.divmod(&g).0;
            h = h.rem(&rem);
            out.push((g, d));
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree
/// product of irreducibles all of degree d.
fn equal_degree(
    g: &Poly<PrimeField>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<PrimeField>> {
    let field = g.field();
    let n = g.deg().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let p = field.p();
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.random_range(0..p)).collect();
        let a = Poly::from_coeffs(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            trace_map(&a, d, g)
        } else {
            let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&exp, g).sub(&Poly::one(field))
        };
        let h = b.gcd(g);
        let k = h.deg().unwrap_or(0);
        if k > 0 && k < n {
            let mut left = equal_degree(&h, d, rng);
            left.extend(equal_degree(&g.divmod(&h).0, d, rng));
            return left;
        }
    }
}

/// a + a^2 + a^4 + ... + a^{2^(d-1)} mod g, the splitting element for
/// characteristic 2.
fn trace_map(a: &Poly<PrimeField>, d: usize, g: &Poly<PrimeField>) -> Poly<PrimeField> {
    let mut acc = a.clone();
    let mut term = a.clone();
    for _ in 1..d {
        term = term.mul_mod(&term, g);
        acc = acc.add(&term).rem(g);
    }
    acc
}
