//! Finite-dimensional commutative Q-algebras presented by
//! multiplication tables: the center of a based ring, the nilradical
//! via the trace form, and the reduced quotient.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::Rationals;
use crate::matrix::{minimal_polynomial, EchelonBasis, Mat};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::ring::RingWithBasis;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("multiplication table has the wrong shape")]
    BadShape,
    #[error("table is not commutative at ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("declared unit does not act as identity")]
    BadUnit,
}

/// A commutative associative unital algebra over Q of finite rank,
/// given by its multiplication table and unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutativeAlgebraQ {
    rank: usize,
    /// Dense rank^3 table: entry ((i * rank) + j) * rank + k is the
    /// k-coordinate of e_i * e_j.
    table: Vec<Rational>,
    unit: Vec<Rational>,
    provenance: String,
}

impl CommutativeAlgebraQ {
    /// Validates commutativity, associativity and the unit law.
    pub fn new(
        table: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
        provenance: impl Into<String>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::new_unchecked(table, unit, provenance)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Shape checks only; used internally where validity is guaranteed
    /// by construction (centers and quotients of valid algebras).
    pub fn new_unchecked(
        table: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
        provenance: impl Into<String>,
    ) -> Result<Self, AlgebraError> {
        let rank = table.len();
        if rank == 0 || unit.len() != rank {
            return Err(AlgebraError::BadShape);
        }
        let mut flat = Vec::with_capacity(rank * rank * rank);
        for plane in &table {
            if plane.len() != rank {
                return Err(AlgebraError::BadShape);
            }
            for row in plane {
                if row.len() != rank {
                    return Err(AlgebraError::BadShape);
                }
                flat.extend_from_slice(row);
            }
        }
        Ok(CommutativeAlgebraQ {
            rank,
            table: flat,
            unit,
            provenance: provenance.into(),
        })
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let r = self.rank;
        for i in 0..r {
            for j in (i + 1)..r {
                if self.entry(i, j) != self.entry(j, i) {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..r {
            let ei = self.basis_vec(i);
            if self.mul_vec(&self.unit, &ei) != ei {
                return Err(AlgebraError::BadUnit);
            }
        }
        for i in 0..r {
            for j in 0..r {
                let ij = self.entry(i, j).to_vec();
                for k in 0..r {
                    let lhs = self.mul_vec(&ij, &self.basis_vec(k));
                    let jk = self.entry(j, k).to_vec();
                    let rhs = self.mul_vec(&self.basis_vec(i), &jk);
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    fn entry(&self, i: usize, j: usize) -> &[Rational] {
        let base = (i * self.rank + j) * self.rank;
        &self.table[base..base + self.rank]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank];
        v[i] = Rational::one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.rank]
    }

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
                for (k, t) in self.entry(i, j).iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &prod * t;
                    }
                }
            }
        }
        out
    }

    pub fn is_idempotent(&self, e: &[Rational]) -> bool {
        self.mul_vec(e, e) == e
    }

    pub fn left_mult_matrix(&self, x: &[Rational]) -> Mat<Rationals> {
        Mat::from_fn(Rationals, self.rank, self.rank, |k, j| {
            let mut acc = Rational::zero();
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                let t = &self.entry(i, j)[k];
                if !t.is_zero() {
                    acc += xi * t;
                }
            }
            acc
        })
    }

    /// Minimal polynomial of an element, through its multiplication
    /// operator.
    pub fn element_min_poly(&self, x: &[Rational]) -> Poly<Rationals> {
        minimal_polynomial(&self.left_mult_matrix(x))
    }

    /// Evaluates a polynomial at an element of the algebra.
    pub fn eval_poly(&self, p: &Poly<Rationals>, x: &[Rational]) -> Vec<Rational> {
        let mut acc = self.zero_vec();
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc, x);
            if !c.is_zero() {
                for (a, u) in acc.iter_mut().zip(&self.unit) {
                    *a += c * u;
                }
            }
        }
        acc
    }

    /// Span of all products of k elements of the given ideal basis;
    /// used to check the error-squaring contract of Newton lifting.
    pub fn ideal_power_span(&self, basis: &[Vec<Rational>], k: u32) -> Vec<Vec<Rational>> {
        let mut current: Vec<Vec<Rational>> = basis.to_vec();
        for _ in 1..k {
            let mut span = EchelonBasis::new(Rationals, self.rank);
            let mut next = Vec::new();
            for v in &current {
                for b in basis {
                    let prod = self.mul_vec(v, b);
                    if span.insert(&prod).is_some() {
                        next.push(prod);
                    }
                }
            }
            current = next;
            if current.is_empty() {
                break;
            }
        }
        current
    }
}

/// The center of a based ring as a commutative algebra, together with
/// the embedding of the center basis back into the ring basis
/// (columns of `embedding` are the center basis vectors).
#[derive(Debug, Clone)]
pub struct CenterAlgebra {
    pub algebra: CommutativeAlgebraQ,
    pub embedding: Mat<Rationals>,
}

impl CenterAlgebra {
    /// Maps a center-coordinate vector to ring coordinates.
    pub fn to_ring(&self, v: &[Rational]) -> Vec<Rational> {
        self.embedding.apply(v)
    }
}

/// Solves the commutator system [x, b_j] = 0 for all basis elements and
/// induces the multiplication table on the kernel.
pub fn center(ring: &RingWithBasis) -> CenterAlgebra {
    let r = ring.rank();
    // One row per (j, k): sum_i x_i (n(i,j,k) - n(j,i,k)) = 0.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for j in 0..r {
        for k in 0..r {
            let mut row = vec![Rational::zero(); r];
            let mut nonzero = false;
            for (i, cell) in row.iter_mut().enumerate() {
                let d = ring.constant(i, j, k) - ring.constant(j, i, k);
                if d != 0 {
                    *cell = Rational::from_integer(d.into());
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        // Commutative ring: the center is everything.
        (0..r).map(|i| {
            let mut v = vec![Rational::zero(); r];
            v[i] = Rational::one();
            v
        }).collect::<Vec<_>>()
    } else {
        Mat::from_rows(Rationals, rows).kernel_basis()
    };
    let c = basis.len();
    let embedding = Mat::from_fn(Rationals, r, c, |i, j| basis[j][i].clone());

    // Left inverse of the embedding, computed once: row-reducing
    // [E | I] turns the identity block into the transform whose first
    // c rows T satisfy T E = I.
    let coords_transform = {
        let mut aug = Mat::zeros(Rationals, r, c + r);
        for i in 0..r {
            for j in 0..c {
                *aug.at_mut(i, j) = embedding.at(i, j).clone();
            }
            *aug.at_mut(i, c + i) = Rational::one();
        }
        let reduced = aug.rref().mat;
        Mat::from_fn(Rationals, c, r, |i, j| reduced.at(i, c + j).clone())
    };
    let coords_of = |v: &[Rational]| -> Vec<Rational> {
        let coords = coords_transform.apply(v);
        debug_assert_eq!(embedding.apply(&coords), v, "vector not in the center");
        coords
    };
    let mut table = vec![vec![vec![Rational::zero(); c]; c]; c];
    for a in 0..c {
        for b in a..c {
            let prod = ring.mul_vec(&basis[a], &basis[b]);
            let coords = coords_of(&prod);
            table[a][b] = coords.clone();
            table[b][a] = coords;
        }
    }
    let unit = coords_of(&ring.unit_vec());
    let algebra = CommutativeAlgebraQ::new_unchecked(
        table,
        unit,
        format!("center({})", ring.label()),
    )
    .expect("center table shape");
    debug_assert!(algebra.validate().is_ok());
    CenterAlgebra { algebra, embedding }
}

/// The nilradical of a commutative Q-algebra and the reduced quotient.
#[derive(Debug, Clone)]
pub struct RadicalDecomposition {
    /// Basis of the nilradical, in algebra coordinates.
    pub radical: Vec<Vec<Rational>>,
    pub quotient: CommutativeAlgebraQ,
    /// Quotient map as a matrix (quotient_rank x rank).
    pub projection: Mat<Rationals>,
    /// A linear section of the projection (rank x quotient_rank).
    pub section: Mat<Rationals>,
}

/// Characteristic-zero radical as the kernel of the trace form
/// T(a, b) = trace(L_(ab)) (Dickson's criterion).
pub fn radical(a: &CommutativeAlgebraQ) -> RadicalDecomposition {
    let r = a.rank();
    let mults: Vec<Mat<Rationals>> = (0..r).map(|i| a.left_mult_matrix(&a.basis_vec(i))).collect();
    // trace(L_i L_j) without forming the products.
    let gram = Mat::from_fn(Rationals, r, r, |i, j| {
        let mut acc = Rational::zero();
        for s in 0..r {
            for t in 0..r {
                let x = mults[i].at(s, t);
                if !x.is_zero() {
                    let y = mults[j].at(t, s);
                    if !y.is_zero() {
                        acc += x * y;
                    }
                }
            }
        }
        acc
    });
    let rad_basis = gram.kernel_basis();

    let mut span = EchelonBasis::new(Rationals, r);
    for v in &rad_basis {
        span.insert(v);
    }
    let complement: Vec<usize> = (0..r).filter(|i| !span.pivots().contains(i)).collect();
    let q = complement.len();
    debug_assert_eq!(q + rad_basis.len(), r);

    // Change of basis [radical | complement]; the inverse's last q rows
    // give coordinates along the complement, i.e. the quotient map.
    let mut change = Mat::zeros(Rationals, r, r);
    for (j, v) in rad_basis.iter().enumerate() {
        for i in 0..r {
            *change.at_mut(i, j) = v[i].clone();
        }
    }
    for (j, &idx) in complement.iter().enumerate() {
        *change.at_mut(idx, rad_basis.len() + j) = Rational::one();
    }
    let inv = change.inverse().expect("radical plus complement spans");
    let projection = Mat::from_fn(Rationals, q, r, |i, j| inv.at(rad_basis.len() + i, j).clone());
    let section = Mat::from_fn(Rationals, r, q, |i, j| {
        if complement[j] == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });

    let sec_vecs: Vec<Vec<Rational>> = (0..q)
        .map(|j| (0..r).map(|i| section.at(i, j).clone()).collect())
        .collect();
    let mut table = vec![vec![vec![Rational::zero(); q]; q]; q];
    for x in 0..q {
        for y in x..q {
            let prod = a.mul_vec(&sec_vecs[x], &sec_vecs[y]);
            let coords = projection.apply(&prod);
            table[x][y] = coords.clone();
            table[y][x] = coords;
        }
    }
    let unit = projection.apply(a.unit());
    let quotient = CommutativeAlgebraQ::new_unchecked(
        table,
        unit,
        format!("{}/rad", a.provenance()),
    )
    .expect("quotient table shape");
    debug_assert!(quotient.validate().is_ok());
    RadicalDecomposition {
        radical: rad_basis,
        quotient,
        projection,
        section,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::rational::{rat, rat_int};

    /// Q[x]/(x^2) as a rank-2 table over basis {1, x}.
    pub(crate) fn dual_numbers() -> CommutativeAlgebraQ {
        let z = Rational::zero;
        let one = Rational::one;
        let table = vec![
            vec![vec![one(), z()], vec![z(), one()]],
            vec![vec![z(), one()], vec![z(), z()]],
        ];
        CommutativeAlgebraQ::new(table, vec![one(), z()], "Q[x]/(x^2)").unwrap()
    }

    #[test]
    fn validation_catches_broken_tables() {
        let z = Rational::zero;
        let one = Rational::one;
        // Non-commutative: e1*e1 = e0 but table asymmetric.
        let table = vec![
            vec![vec![one(), z()], vec![z(), one()]],
            vec![vec![z(), z()], vec![z(), z()]],
        ];
        let err = CommutativeAlgebraQ::new(table, vec![one(), z()], "broken");
        assert!(matches!(err, Err(AlgebraError::NotCommutative(0, 1))));
    }

    #[test]
    fn center_of_s3_is_rank_three() {
        // Class sums span the center of a group ring.
        let ring = catalog("s3").unwrap();
        let c = center(&ring);
        assert_eq!(c.algebra.rank(), 3);
        // Every center basis vector commutes with every ring basis vector.
        for j in 0..c.algebra.rank() {
            let v = c.to_ring(&c.algebra.basis_vec(j));
            for i in 0..ring.rank() {
                let b = ring.basis_vec(i);
                assert_eq!(ring.mul_vec(&v, &b), ring.mul_vec(&b, &v));
            }
        }
    }

    #[test]
    fn center_of_commutative_ring_is_everything() {
        let ring = catalog("fibonacci").unwrap();
        let c = center(&ring);
        assert_eq!(c.algebra.rank(), 2);
    }

    #[test]
    fn center_of_rank_one_ring() {
        let ring = crate::ring::RingWithBasis::new(
            "unit-only",
            0,
            vec![0],
            vec![vec![vec![1]]],
            None,
        )
        .unwrap();
        let c = center(&ring);
        assert_eq!(c.algebra.rank(), 1);
    }

    #[test]
    fn radical_of_dual_numbers_is_x_line() {
        let a = dual_numbers();
        let rad = radical(&a);
        assert_eq!(rad.radical, vec![vec![rat_int(0), rat_int(1)]]);
        assert_eq!(rad.quotient.rank(), 1);
    }

    #[test]
    fn group_ring_z2_is_semisimple() {
        // The trace form is 2*identity in the {1, g}-adapted basis.
        let ring = catalog("z2").unwrap();
        let c = center(&ring);
        let rad = radical(&c.algebra);
        assert!(rad.radical.is_empty());
        assert_eq!(rad.quotient.rank(), 2);
    }

    #[test]
    fn fibonacci_is_a_field() {
        let ring = catalog("fibonacci").unwrap();
        let c = center(&ring);
        let rad = radical(&c.algebra);
        assert!(rad.radical.is_empty());
    }

    #[test]
    fn min_poly_of_tau() {
        let ring = catalog("fibonacci").unwrap();
        let c = center(&ring);
        let tau = c.algebra.basis_vec(1);
        let mp = c.algebra.element_min_poly(&tau);
        // tau^2 = 1 + tau.
        assert_eq!(mp, Poly::from_i64(Rationals, &[-1, -1, 1]));
    }

    #[test]
    fn eval_poly_matches_powers() {
        let a = dual_numbers();
        let x = a.basis_vec(1);
        let p = Poly::from_i64(Rationals, &[2, 3, 1]); // x^2 + 3x + 2
        let v = a.eval_poly(&p, &x);
        // x^2 = 0, so the value is 2 + 3x.
        assert_eq!(v, vec![rat_int(2), rat_int(3)]);
        let _ = rat(1, 2);
    }

    #[test]
    fn ideal_powers_shrink() {
        let a = dual_numbers();
        let basis = vec![a.basis_vec(1)];
        assert_eq!(a.ideal_power_span(&basis, 1).len(), 1);
        assert!(a.ideal_power_span(&basis, 2).is_empty());
    }
}
