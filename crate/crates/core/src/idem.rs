//! The idempotent engine: primitive idempotents of the rationalized
//! center, Newton lifting along nilpotent ideals, subset enumeration of
//! all 2^c central idempotents, and the coefficient-ring filter that
//! decides connectedness of the spectrum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{center, radical, CommutativeAlgebraQ};
use crate::coeff::CoefficientRing;
use crate::factor::{factor_poly_rationals, FactorError};
use crate::field::Rationals;
use crate::matrix::EchelonBasis;
use crate::rational::{format_rational, Rational};
use crate::ring::{rationals_to_strings, RingElement, RingWithBasis};

/// Cap on the number of primitive idempotents before the 2^c subset
/// enumeration is refused.
pub const SUBSET_CAP: usize = 20;

/// Attempt budget for the primitive-element search.
const PRIMITIVE_BUDGET: usize = 64;

/// Newton iteration cap; hit only when the ideal is not nilpotent.
const NEWTON_CAP: usize = 64;

/// Fixed seed for the random fallback of the primitive-element search.
const PRIMITIVE_SEED: u64 = 0x9e1e_5eed;

#[derive(Debug, Error)]
pub enum IdemError {
    #[error("idempotent enumeration over a prime field is not supported")]
    PrimeFieldUnsupported,
    #[error("{count} primitive idempotents exceed the subset cap of {cap}")]
    SubsetCap { count: usize, cap: usize },
    #[error("not monogenic at desk scale: no primitive element found in {0} attempts")]
    NotMonogenic(usize),
    #[error("input is not idempotent modulo the given ideal")]
    NotIdempotentModIdeal,
    #[error("Newton iteration cap exceeded; the ideal is not nilpotent")]
    IterationCap,
    #[error("input is not idempotent")]
    NotIdempotent,
    #[error("idempotent has non-integral coefficients")]
    NonIntegral,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Result of Newton lifting: the exact idempotent and how many
/// iterations `e <- 3e^2 - 2e^3` were applied.
#[derive(Debug, Clone)]
pub struct NewtonLift {
    pub idempotent: Vec<Rational>,
    pub iterations: usize,
}

/// Lifts an element that is idempotent modulo the span of `ideal` to an
/// exact idempotent congruent to it, by the cubic Newton map. Each step
/// squares the defect ideal, so nilpotent ideals converge in
/// logarithmically many steps.
pub fn newton_lift(
    algebra: &CommutativeAlgebraQ,
    e0: &[Rational],
    ideal: &[Vec<Rational>],
) -> Result<NewtonLift, IdemError> {
    let mut span = EchelonBasis::new(Rationals, algebra.rank());
    for v in ideal {
        span.insert(v);
    }
    let defect = sub(&algebra.mul_vec(e0, e0), e0);
    if !span.contains(&defect) {
        return Err(IdemError::NotIdempotentModIdeal);
    }
    let mut e = e0.to_vec();
    let mut iterations = 0;
    loop {
        let sq = algebra.mul_vec(&e, &e);
        if sq == e {
            break;
        }
        if iterations >= NEWTON_CAP {
            return Err(IdemError::IterationCap);
        }
        let cube = algebra.mul_vec(&sq, &e);
        e = sq
            .iter()
            .zip(&cube)
            .map(|(s, c)| s * Rational::from_integer(3.into()) - c * Rational::from_integer(2.into()))
            .collect();
        iterations += 1;
    }
    if !span.contains(&sub(&e, e0)) {
        return Err(IdemError::Internal(
            "lift does not reduce to its input modulo the ideal".into(),
        ));
    }
    Ok(NewtonLift {
        idempotent: e,
        iterations,
    })
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Complete list of primitive orthogonal idempotents of a commutative
/// Q-algebra, sorted by coefficient vector.
///
/// Pipeline: reduce modulo the nilradical, find a primitive element of
/// the reduced quotient, factor its (squarefree) minimal polynomial,
/// invert each cofactor modulo its factor to get the idempotents of the
/// quotient, and Newton-lift them back.
pub fn primitive_idempotents(
    algebra: &CommutativeAlgebraQ,
) -> Result<Vec<Vec<Rational>>, IdemError> {
    let rad = radical(algebra);
    let b = &rad.quotient;
    let a = find_primitive_element(b)?;
    let min_poly = b.element_min_poly(&a);
    debug_assert_eq!(min_poly.deg(), Some(b.rank()));
    if !min_poly.gcd(&min_poly.derivative()).is_one() {
        return Err(IdemError::Internal(
            "reduced quotient has a non-squarefree minimal polynomial".into(),
        ));
    }
    let factorization = factor_poly_rationals(&min_poly)?;
    let mut out = Vec::new();
    for (factor, mult) in &factorization.factors {
        debug_assert_eq!(*mult, 1);
        let cofactor = min_poly.divmod(factor).0;
        let (g, u, _) = cofactor.xgcd(factor);
        if !g.is_one() {
            return Err(IdemError::Internal("cofactor not invertible".into()));
        }
        let w = u.mul(&cofactor).rem(&min_poly);
        let e_quotient = b.eval_poly(&w, &a);
        if !b.is_idempotent(&e_quotient) {
            return Err(IdemError::Internal("splitting produced a non-idempotent".into()));
        }
        let e0 = rad.section.apply(&e_quotient);
        let lifted = newton_lift(algebra, &e0, &rad.radical)?;
        out.push(lifted.idempotent);
    }

    // Partition-of-unity check before returning.
    let mut total = algebra.zero_vec();
    for e in &out {
        if !algebra.is_idempotent(e) {
            return Err(IdemError::Internal("lifted element is not idempotent".into()));
        }
        total = add(&total, e);
    }
    if total != algebra.unit() {
        return Err(IdemError::Internal("idempotents do not sum to one".into()));
    }
    for i in 0..out.len() {
        for j in (i + 1)..out.len() {
            if algebra.mul_vec(&out[i], &out[j]) != algebra.zero_vec() {
                return Err(IdemError::Internal("idempotents are not orthogonal".into()));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Basis elements first; then the deterministic geometric combinations
/// sum of t^i e_i for t = 2, 3, .. (the component values are distinct
/// polynomials in t, so only finitely many t can collide); then seeded
/// random small coefficients as a last resort.
fn find_primitive_element(b: &CommutativeAlgebraQ) -> Result<Vec<Rational>, IdemError> {
    let rank = b.rank();
    let is_primitive =
        |cand: &Vec<Rational>| b.element_min_poly(cand).deg() == Some(rank);
    for i in 0..rank {
        let cand = b.basis_vec(i);
        if is_primitive(&cand) {
            return Ok(cand);
        }
    }
    let geometric_rounds = 16.min(PRIMITIVE_BUDGET);
    for t in 0..geometric_rounds {
        let base = BigInt::from(t as i64 + 2);
        let mut power = BigInt::one();
        let cand: Vec<Rational> = (0..rank)
            .map(|_| {
                let c = Rational::from_integer(power.clone());
                power *= &base;
                c
            })
            .collect();
        if is_primitive(&cand) {
            return Ok(cand);
        }
    }
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(PRIMITIVE_SEED);
    for _ in geometric_rounds..PRIMITIVE_BUDGET {
        let cand: Vec<Rational> = (0..rank)
            .map(|_| Rational::from_integer(rng.random_range(-9i64..=9).into()))
            .collect();
        if is_primitive(&cand) {
            return Ok(cand);
        }
    }
    Err(IdemError::NotMonogenic(PRIMITIVE_BUDGET))
}

/// Complete idempotent analysis of a based ring over a coefficient
/// ring.
#[derive(Debug, Clone)]
pub struct IdempotentReport {
    pub ring_label: String,
    pub coefficient_ring: CoefficientRing,
    /// Primitive central idempotents over Q, in ring coordinates,
    /// sorted by coefficient vector.
    pub primitive: Vec<Vec<Rational>>,
    /// 2^c, the number of central idempotents over Q.
    pub count_over_q: u64,
    /// Idempotents whose coordinates all lie in the coefficient ring,
    /// sorted by coefficient vector.
    pub surviving: Vec<Vec<Rational>>,
    pub connected: bool,
    /// Smallest nontrivial surviving idempotent, if any.
    pub witness: Option<Vec<Rational>>,
    /// 0/1 profile of the witness over the sorted primitive list.
    pub witness_profile: Option<Vec<u8>>,
}

/// Sequential subset enumeration; see [`par_enumerate_idempotents`] for
/// the rayon-backed scan.
pub fn enumerate_idempotents(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
) -> Result<IdempotentReport, IdemError> {
    enumerate_impl(ring, coeff, false)
}

/// Identical to [`enumerate_idempotents`] with the 2^c subset scan
/// fanned out across threads; reports are deterministic and equal to
/// the sequential ones.
#[cfg(feature = "parallel")]
pub fn par_enumerate_idempotents(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
) -> Result<IdempotentReport, IdemError> {
    enumerate_impl(ring, coeff, true)
}

fn enumerate_impl(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
    parallel: bool,
) -> Result<IdempotentReport, IdemError> {
    if matches!(coeff, CoefficientRing::PrimeField(_)) {
        return Err(IdemError::PrimeFieldUnsupported);
    }
    let center = center(ring);
    let prims_center = primitive_idempotents(&center.algebra)?;
    let c = prims_center.len();
    if c > SUBSET_CAP {
        return Err(IdemError::SubsetCap {
            count: c,
            cap: SUBSET_CAP,
        });
    }
    let mut primitive: Vec<Vec<Rational>> =
        prims_center.iter().map(|e| center.to_ring(e)).collect();
    primitive.sort();

    // Scale to a common denominator so subset sums are integer vectors.
    let denom = crate::rational::lcm_denominators(primitive.iter().flatten());
    let scaled: Vec<Vec<BigInt>> = primitive
        .iter()
        .map(|e| {
            e.iter()
                .map(|q| q.numer() * (&denom / q.denom()))
                .collect()
        })
        .collect();

    let masks = scan_masks(&scaled, &denom, coeff, c, parallel);

    let mut surviving: Vec<(Vec<Rational>, u64)> = masks
        .into_iter()
        .map(|mask| {
            let mut sum = vec![BigInt::zero(); ring.rank()];
            for (i, e) in scaled.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (a, b) in sum.iter_mut().zip(e) {
                        *a += b;
                    }
                }
            }
            let vec: Vec<Rational> = sum
                .into_iter()
                .map(|n| Rational::new(n, denom.clone()))
                .collect();
            (vec, mask)
        })
        .collect();
    surviving.sort();

    // Recheck every reported idempotent exactly: squares to itself and
    // commutes with all basis elements.
    for (e, _) in &surviving {
        if ring.mul_vec(e, e) != *e {
            return Err(IdemError::Internal("survivor fails e^2 = e".into()));
        }
        for i in 0..ring.rank() {
            let b = ring.basis_vec(i);
            if ring.mul_vec(e, &b) != ring.mul_vec(&b, e) {
                return Err(IdemError::Internal("survivor is not central".into()));
            }
        }
    }

    let full_mask: u64 = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
    let nontrivial = surviving
        .iter()
        .find(|(_, mask)| *mask != 0 && *mask != full_mask);
    let witness = nontrivial.map(|(e, _)| e.clone());
    let witness_profile =
        nontrivial.map(|(_, mask)| (0..c).map(|i| (mask >> i & 1) as u8).collect());
    let connected = surviving.len() == 2;
    Ok(IdempotentReport {
        ring_label: ring.label().to_string(),
        coefficient_ring: coeff.clone(),
        primitive,
        count_over_q: 1u64 << c,
        surviving: surviving.into_iter().map(|(e, _)| e).collect(),
        connected,
        witness,
        witness_profile,
    })
}

fn scan_masks(
    scaled: &[Vec<BigInt>],
    denom: &BigInt,
    coeff: &CoefficientRing,
    c: usize,
    parallel: bool,
) -> Vec<u64> {
    let total: u64 = 1u64 << c;
    let test = |mask: u64| -> Option<u64> {
        let rank = scaled.first().map_or(0, |e| e.len());
        let mut sum = vec![BigInt::zero(); rank];
        for (i, e) in scaled.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, b) in sum.iter_mut().zip(e) {
                    *a += b;
                }
            }
        }
        sum.iter()
            .all(|n| coefficient_in_ring(n, denom, coeff))
            .then_some(mask)
    };
    if parallel {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            return (0..total).into_par_iter().filter_map(test).collect();
        }
    }
    (0..total).filter_map(test).collect()
}

/// Is num/denom in the coefficient ring? (`denom` need not be reduced
/// against `num`.)
fn coefficient_in_ring(num: &BigInt, denom: &BigInt, coeff: &CoefficientRing) -> bool {
    match coeff {
        CoefficientRing::Rationals => true,
        CoefficientRing::Integers => (num % denom).is_zero(),
        CoefficientRing::Localized(s) => {
            let mut d = denom / num.gcd(denom);
            for &p in s {
                let p = BigInt::from(p);
                while (&d % &p).is_zero() {
                    d /= &p;
                }
            }
            d.is_one()
        }
        CoefficientRing::PrimeField(_) => unreachable!("rejected upstream"),
    }
}

/// Divisibility witness for a nonzero integral idempotent: by the
/// power-trap argument (E = pF forces E = p^n F^n for all n), some
/// coefficient must stay off the multiples of p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPWitness {
    pub is_zero: bool,
    /// Index of the first coefficient not divisible by p.
    pub witness_index: Option<usize>,
    pub holds: bool,
}

pub fn mod_p_nonvanishing(e: &RingElement, p: u64) -> Result<ModPWitness, IdemError> {
    if e.coeffs().iter().any(|c| !c.denom().is_one()) {
        return Err(IdemError::NonIntegral);
    }
    if e.ring().mul_vec(e.coeffs(), e.coeffs()) != e.coeffs() {
        return Err(IdemError::NotIdempotent);
    }
    let is_zero = e.coeffs().iter().all(|c| c.is_zero());
    let p = BigInt::from(p);
    let witness_index = e
        .coeffs()
        .iter()
        .position(|c| !(c.numer() % &p).is_zero());
    Ok(ModPWitness {
        is_zero,
        witness_index,
        holds: is_zero || witness_index.is_some(),
    })
}

/// [`IdempotentReport`] wrapped with provenance and timing, for the
/// machine-readable connectedness verdict.
#[derive(Debug, Clone)]
pub struct ConnectednessReport {
    pub report: IdempotentReport,
    pub elapsed_ms: u128,
    pub unix_seconds: u64,
}

pub fn connectedness_report(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
) -> Result<ConnectednessReport, IdemError> {
    wrap_report(ring, coeff, false)
}

#[cfg(feature = "parallel")]
pub fn par_connectedness_report(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
) -> Result<ConnectednessReport, IdemError> {
    wrap_report(ring, coeff, true)
}

fn wrap_report(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
    parallel: bool,
) -> Result<ConnectednessReport, IdemError> {
    let start = std::time::Instant::now();
    let report = enumerate_impl(ring, coeff, parallel)?;
    let elapsed_ms = start.elapsed().as_millis();
    let unix_seconds = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(ConnectednessReport {
        report,
        elapsed_ms,
        unix_seconds,
    })
}

/// JSON form of an idempotent report. Rationals are serialized as
/// `"num/den"` strings and field order is alphabetical so keys come out
/// sorted.
#[derive(Debug, Serialize, Deserialize)]
pub struct IdempotentReportJson {
    pub coefficient_ring: String,
    pub connected: bool,
    #[serde(rename = "count_over_Q")]
    pub count_over_q: u64,
    pub primitive_idempotents: Vec<Vec<String>>,
    pub ring: String,
    pub surviving: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<String>>,
}

impl From<&IdempotentReport> for IdempotentReportJson {
    fn from(r: &IdempotentReport) -> Self {
        IdempotentReportJson {
            coefficient_ring: r.coefficient_ring.to_string(),
            connected: r.connected,
            count_over_q: r.count_over_q,
            primitive_idempotents: r.primitive.iter().map(|e| rationals_to_strings(e)).collect(),
            ring: r.ring_label.clone(),
            surviving: r.surviving.iter().map(|e| rationals_to_strings(e)).collect(),
            witness: r.witness.as_ref().map(|e| rationals_to_strings(e)),
        }
    }
}

/// Volatile run metadata, kept in a single field so reports are
/// byte-identical apart from it.
#[derive(Debug, Serialize, Deserialize)]
pub struct TimestampJson {
    pub elapsed_ms: u128,
    pub unix: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ConnectednessReportJson {
    pub report: IdempotentReportJson,
    pub timestamp: TimestampJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_profile: Option<Vec<u8>>,
}

impl From<&ConnectednessReport> for ConnectednessReportJson {
    fn from(r: &ConnectednessReport) -> Self {
        ConnectednessReportJson {
            report: (&r.report).into(),
            timestamp: TimestampJson {
                elapsed_ms: r.elapsed_ms,
                unix: r.unix_seconds,
            },
            witness_profile: r.report.witness_profile.clone(),
        }
    }
}

/// Convenience display form of a witness for logs.
pub fn witness_string(witness: &[Rational]) -> String {
    witness
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",")
}
