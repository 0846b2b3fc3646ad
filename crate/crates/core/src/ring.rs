//! Finite-rank rings with a distinguished basis: structure constants,
//! the basis involution, the coefficientwise inner product, and the
//! exhaustive axiom checker.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{localization_membership, CoeffError, CoefficientRing};
use crate::field::{PrimeField, Rationals};
use crate::matrix::Mat;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum RingError {
    #[error("structure constant table has the wrong shape")]
    BadShape,
    #[error("dual must be a permutation of the basis indices")]
    BadDual,
    #[error("unit index {0} out of range")]
    BadUnitIndex(usize),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("elements have different coefficient rings")]
    CoefficientRingMismatch,
    #[error("coefficient {index} does not lie in {ring}")]
    CoefficientNotInRing { index: usize, ring: String },
    #[error("unknown catalog fixture {0:?}")]
    UnknownFixture(String),
    #[error("invalid ring data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("json: {0}")]
    Json(String),
}

/// A finite-rank ring presented by nonnegative-integer structure
/// constants over a distinguished basis, a unit basis element, and an
/// involutive permutation of the basis.
///
/// Construction checks shape only; the algebraic axioms are checked by
/// [`RingWithBasis::verify_axioms`], which reports failures instead of
/// rejecting them (rings built from nonsemisimple representation data
/// may legitimately fail adjointness).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingWithBasis {
    label: String,
    rank: usize,
    unit_index: usize,
    dual: Vec<usize>,
    /// Dense rank^3 table; entry (i, j, k) is the coefficient of basis
    /// element k in the product b_i * b_j.
    constants: Vec<i64>,
    basis_labels: Option<Vec<String>>,
}

impl RingWithBasis {
    pub fn new(
        label: impl Into<String>,
        unit_index: usize,
        dual: Vec<usize>,
        constants: Vec<Vec<Vec<i64>>>,
        basis_labels: Option<Vec<String>>,
    ) -> Result<Self, RingError> {
        let rank = constants.len();
        if rank == 0 {
            return Err(RingError::BadShape);
        }
        let mut flat = Vec::with_capacity(rank * rank * rank);
        for plane in &constants {
            if plane.len() != rank {
                return Err(RingError::BadShape);
            }
            for row in plane {
                if row.len() != rank {
                    return Err(RingError::BadShape);
                }
                flat.extend_from_slice(row);
            }
        }
        if dual.len() != rank || {
            let mut seen = vec![false; rank];
            dual.iter().any(|&d| {
                d >= rank || std::mem::replace(&mut seen[d], true)
            })
        } {
            return Err(RingError::BadDual);
        }
        if unit_index >= rank {
            return Err(RingError::BadUnitIndex(unit_index));
        }
        if let Some(labels) = &basis_labels {
            if labels.len() != rank {
                return Err(RingError::BadShape);
            }
        }
        Ok(RingWithBasis {
            label: label.into(),
            rank,
            unit_index,
            dual,
            constants: flat,
            basis_labels,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn unit_index(&self) -> usize {
        self.unit_index
    }
    pub fn dual(&self) -> &[usize] {
        &self.dual
    }
    pub fn basis_labels(&self) -> Option<&[String]> {
        self.basis_labels.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Structure constant n(i, j, k).
    pub fn constant(&self, i: usize, j: usize, k: usize) -> i64 {
        self.constants[(i * self.rank + j) * self.rank + k]
    }

    fn product_row(&self, i: usize, j: usize) -> &[i64] {
        let base = (i * self.rank + j) * self.rank;
        &self.constants[base..base + self.rank]
    }

    pub fn constants_3d(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.product_row(i, j).to_vec())
                    .collect()
            })
            .collect()
    }

    /// Bilinear extension of the structure constants to exact rational
    /// coefficient vectors.
    pub fn mul_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rank);
        assert_eq!(y.len(), self.rank);
        let mut out = vec![Rational::zero(); self.rank];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let prod = xi * yj;
                for (k, &n) in self.product_row(i, j).iter().enumerate() {
                    if n != 0 {
                        out[k] += &prod * Rational::from_integer(n.into());
                    }
                }
            }
        }
        out
    }

    /// Coefficient permutation induced by the basis involution.
    pub fn star_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rank);
        let mut out = vec![Rational::zero(); self.rank];
        for (i, xi) in x.iter().enumerate() {
            out[self.dual[i]] = xi.clone();
        }
        out
    }

    /// Coefficientwise inner product over the distinguished basis.
    pub fn inner_vec(&self, x: &[Rational], y: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.rank);
        assert_eq!(y.len(), self.rank);
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    pub fn unit_vec(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank];
        v[self.unit_index] = Rational::one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.rank]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank];
        v[i] = Rational::one();
        v
    }

    /// Matrix of left multiplication by `x` on the ring.
    pub fn left_mult_matrix(&self, x: &[Rational]) -> Mat<Rationals> {
        Mat::from_fn(Rationals, self.rank, self.rank, |k, j| {
            let mut acc = Rational::zero();
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                let n = self.constant(i, j, k);
                if n != 0 {
                    acc += xi * Rational::from_integer(n.into());
                }
            }
            acc
        })
    }

    /// Exhaustive axiom check over basis indices. Passing on basis
    /// elements extends to all elements by bilinearity.
    pub fn verify_axioms(&self) -> AxiomReport {
        self.verify_axioms_impl(false)
    }

    /// Same as [`verify_axioms`](Self::verify_axioms), with the
    /// associativity sweep fanned out across threads. The report is
    /// identical to the sequential one.
    #[cfg(feature = "parallel")]
    pub fn par_verify_axioms(&self) -> AxiomReport {
        self.verify_axioms_impl(true)
    }

    fn verify_axioms_impl(&self, parallel: bool) -> AxiomReport {
        let r = self.rank;

        let nonnegativity = match (0..r * r * r).find(|&idx| self.constants[idx] < 0) {
            Some(idx) => AxiomCheck::fail(vec![
                idx / (r * r),
                (idx / r) % r,
                idx % r,
            ]),
            None => AxiomCheck::pass(),
        };

        let unit = 'unit: {
            let u = self.unit_index;
            for j in 0..r {
                for k in 0..r {
                    let expected = i64::from(j == k);
                    if self.constant(u, j, k) != expected || self.constant(j, u, k) != expected {
                        break 'unit AxiomCheck::fail(vec![u, j, k]);
                    }
                }
            }
            AxiomCheck::pass()
        };

        let associativity = self.associativity_check(parallel);

        let involution = 'inv: {
            for i in 0..r {
                if self.dual[self.dual[i]] != i {
                    break 'inv AxiomCheck::fail(vec![i]);
                }
            }
            if self.dual[self.unit_index] != self.unit_index {
                break 'inv AxiomCheck::fail(vec![self.unit_index]);
            }
            AxiomCheck::pass()
        };

        // (b_i b_j, b_k) = (b_i, b_k b_{j*}) = (b_j, b_{i*} b_k).
        let adjointness = 'adj: {
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        let lhs = self.constant(i, j, k);
                        if lhs != self.constant(k, self.dual[j], i)
                            || lhs != self.constant(self.dual[i], k, j)
                        {
                            break 'adj AxiomCheck::fail(vec![i, j, k]);
                        }
                    }
                }
            }
            AxiomCheck::pass()
        };

        // Multiplication by b_{i*} is the transpose of multiplication by b_i.
        let transpose = 'tr: {
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        if self.constant(self.dual[i], j, k) != self.constant(i, k, j) {
                            break 'tr AxiomCheck::fail(vec![i, j, k]);
                        }
                    }
                }
            }
            AxiomCheck::pass()
        };

        AxiomReport {
            adjointness,
            associativity,
            involution,
            nonnegativity,
            transpose,
            unit,
        }
    }

    fn associativity_check(&self, parallel: bool) -> AxiomCheck {
        let r = self.rank;
        let check_i = |i: usize| -> Option<Vec<usize>> {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let mut lhs = 0i128;
                        let mut rhs = 0i128;
                        for m in 0..r {
                            lhs += self.constant(i, j, m) as i128 * self.constant(m, k, l) as i128;
                            rhs += self.constant(j, k, m) as i128 * self.constant(i, m, l) as i128;
                        }
                        if lhs != rhs {
                            return Some(vec![i, j, k, l]);
                        }
                    }
                }
            }
            None
        };
        let first = if parallel {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..r).into_par_iter().filter_map(check_i).min()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..r).filter_map(check_i).next()
            }
        } else {
            (0..r).filter_map(check_i).next()
        };
        match first {
            Some(counterexample) => AxiomCheck::fail(counterexample),
            None => AxiomCheck::pass(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RingJson::from(self)).expect("ring serialization")
    }

    pub fn from_json(s: &str) -> Result<Self, RingError> {
        let parsed: RingJson = serde_json::from_str(s).map_err(|e| RingError::Json(e.to_string()))?;
        parsed.try_into()
    }
}

/// One axiom verdict; `counterexample` holds the first offending basis
/// index tuple when the check fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Vec<usize>>,
    pub passed: bool,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            counterexample: None,
            passed: true,
        }
    }
    fn fail(counterexample: Vec<usize>) -> Self {
        AxiomCheck {
            counterexample: Some(counterexample),
            passed: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub adjointness: AxiomCheck,
    pub associativity: AxiomCheck,
    pub involution: AxiomCheck,
    pub nonnegativity: AxiomCheck,
    pub transpose: AxiomCheck,
    pub unit: AxiomCheck,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.adjointness.passed
            && self.associativity.passed
            && self.involution.passed
            && self.nonnegativity.passed
            && self.transpose.passed
            && self.unit.passed
    }
}

/// An element of a based ring: exact rational coefficients in the
/// distinguished basis, tagged with the coefficient ring they live in.
#[derive(Debug, Clone, PartialEq)]
pub struct RingElement {
    ring: Arc<RingWithBasis>,
    coeffs: Vec<Rational>,
    coeff_ring: CoefficientRing,
}

impl RingElement {
    /// Checks the membership invariant: every coefficient must lie in
    /// `coeff_ring` (for prime fields: an integer residue in `[0, p)`).
    pub fn new(
        ring: Arc<RingWithBasis>,
        coeffs: Vec<Rational>,
        coeff_ring: CoefficientRing,
    ) -> Result<Self, RingError> {
        if coeffs.len() != ring.rank() {
            return Err(RingError::BadShape);
        }
        for (index, c) in coeffs.iter().enumerate() {
            let ok = match &coeff_ring {
                CoefficientRing::PrimeField(p) => {
                    c.denom().is_one()
                        && !c.numer().is_negative()
                        && c.numer() < &num_bigint::BigInt::from(*p)
                }
                other => localization_membership(c, other)?,
            };
            if !ok {
                return Err(RingError::CoefficientNotInRing {
                    index,
                    ring: coeff_ring.to_string(),
                });
            }
        }
        Ok(RingElement {
            ring,
            coeffs,
            coeff_ring,
        })
    }

    pub fn ring(&self) -> &Arc<RingWithBasis> {
        &self.ring
    }
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
    pub fn coeff_ring(&self) -> &CoefficientRing {
        &self.coeff_ring
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, RingError> {
        if !self.same_ring(other) {
            return Err(RingError::RingMismatch);
        }
        if self.coeff_ring != other.coeff_ring {
            return Err(RingError::CoefficientRingMismatch);
        }
        let mut coeffs = self.ring.mul_vec(&self.coeffs, &other.coeffs);
        if let CoefficientRing::PrimeField(p) = self.coeff_ring {
            let field = PrimeField::new(p);
            for c in coeffs.iter_mut() {
                debug_assert!(c.denom().is_one());
                *c = Rational::from_integer(field.from_bigint(c.numer()).into());
            }
        }
        RingElement::new(self.ring.clone(), coeffs, self.coeff_ring.clone())
    }

    pub fn star(&self) -> Self {
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.star_vec(&self.coeffs),
            coeff_ring: self.coeff_ring.clone(),
        }
    }

    pub fn inner_product(&self, other: &Self) -> Result<Rational, RingError> {
        if !self.same_ring(other) {
            return Err(RingError::RingMismatch);
        }
        Ok(self.ring.inner_vec(&self.coeffs, &other.coeffs))
    }
}

/// On-disk form of a ring. Field order is alphabetical so the emitted
/// JSON has sorted keys; all values are integers or strings.
#[derive(Serialize, Deserialize)]
struct RingJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    basis_labels: Option<Vec<String>>,
    constants: Vec<Vec<Vec<i64>>>,
    dual: Vec<usize>,
    label: String,
    rank: usize,
    unit: usize,
}

impl From<&RingWithBasis> for RingJson {
    fn from(r: &RingWithBasis) -> Self {
        RingJson {
            basis_labels: r.basis_labels.clone(),
            constants: r.constants_3d(),
            dual: r.dual.clone(),
            label: r.label.clone(),
            rank: r.rank,
            unit: r.unit_index,
        }
    }
}

impl TryFrom<RingJson> for RingWithBasis {
    type Error = RingError;

    fn try_from(j: RingJson) -> Result<Self, RingError> {
        if j.constants.len() != j.rank {
            return Err(RingError::BadShape);
        }
        RingWithBasis::new(j.label, j.unit, j.dual, j.constants, j.basis_labels)
    }
}

/// Serializes a rational vector as `"num/den"` strings.
pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn strings_to_rationals(v: &[String]) -> Result<Vec<Rational>, RingError> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|e| RingError::Invalid(e.to_string())))
        .collect()
}
