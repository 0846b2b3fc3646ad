//! MeatAxe machinery: spin-up, Norton's irreducibility criterion,
//! recursive chopping into composition factors, and the isomorphism
//! test for irreducibles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrixrep::MatrixRep;
use super::RepError;
use crate::field::{Field, PrimeField};
use crate::matrix::{eval_poly_at_matrix, minimal_polynomial, EchelonBasis, Mat};

/// Fixed seed for the algebra-element sequence; chop certificates are
/// reproducible because every run draws the same elements.
pub const MEATAXE_SEED: u64 = 0x0a1_5eed;

/// Element-sequence budget before the test gives up as inconclusive.
const THETA_BUDGET: usize = 64;

/// Cap on kernel-vector enumeration per candidate element; candidates
/// with larger null spaces are deferred in favour of thinner ones.
const KERNEL_ENUM_CAP: u64 = 4096;

/// Hard cap when only fat-kernel candidates were found.
const KERNEL_ENUM_HARD_CAP: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub enum Irreducibility {
    Irreducible,
    /// The rows of the matrix span a proper nonzero invariant subspace.
    Reducible { submodule: Mat<PrimeField> },
}

/// Smallest subspace containing `v` and closed under the action, as a
/// row-echelon basis matrix.
pub fn spinup(rep: &MatrixRep, v: &[u64]) -> Result<Mat<PrimeField>, RepError> {
    spin_matrices(rep.field(), rep.dim(), rep.gens(), v)
}

fn spin_matrices(
    field: PrimeField,
    dim: usize,
    action: &[Mat<PrimeField>],
    v: &[u64],
) -> Result<Mat<PrimeField>, RepError> {
    if v.len() != dim || v.iter().all(|&c| c == 0) {
        return Err(RepError::ZeroVector);
    }
    let mut basis = EchelonBasis::new(field, dim);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    if let Some(row) = basis.insert(v) {
        queue.push(row);
    }
    while let Some(w) = queue.pop() {
        for m in action {
            let image = m.apply(&w);
            if let Some(row) = basis.insert(&image) {
                queue.push(row);
                if basis.len() == dim {
                    return Ok(basis.to_matrix());
                }
            }
        }
    }
    Ok(basis.to_matrix())
}

/// Norton's criterion with a deterministic element sequence.
///
/// Each draw takes a pseudo-random element theta of the enveloping
/// algebra and evaluates each irreducible factor f of its minimal
/// polynomial at theta; f(theta) is singular by construction, so every
/// draw yields test elements even when the enveloping algebra is a
/// field and nonzero singular elements do not exist. For a singular
/// element the module is reducible iff some nonzero kernel vector
/// spins to a proper subspace, or (when the kernel misses every
/// submodule) one kernel vector of the transpose spins to a proper
/// subspace of the transpose module. All nonzero kernel vectors are
/// enumerated, so the verdict is exact; candidates whose kernels are
/// too fat to enumerate are deferred in favour of thinner ones.
pub fn norton_irreducible(rep: &MatrixRep) -> Result<Irreducibility, RepError> {
    norton_with_seed(rep, MEATAXE_SEED)
}

pub fn norton_with_seed(rep: &MatrixRep, seed: u64) -> Result<Irreducibility, RepError> {
    let dim = rep.dim();
    if dim == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let field = rep.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fallback: Option<(Mat<PrimeField>, Vec<Vec<u64>>)> = None;
    for _ in 0..THETA_BUDGET {
        let theta = random_algebra_element(rep, &mut rng);
        let min_poly = minimal_polynomial(&theta);
        let factors = crate::factor::factor_poly_mod_p(&min_poly)
            .expect("minimal polynomial is nonzero");
        for (f, _) in &factors.factors {
            let candidate = eval_poly_at_matrix(f, &theta);
            let kernel = candidate.kernel_basis();
            debug_assert!(!kernel.is_empty(), "factor of the minimal polynomial");
            // Cheap reducibility scan on the kernel basis alone; a
            // proper spin is a genuine submodule no matter how fat the
            // kernel is (isotypic modules are caught here).
            for v in &kernel {
                let span = spinup(rep, v)?;
                if span.rows() < dim {
                    debug_assert!(is_invariant(rep, &span));
                    return Ok(Irreducibility::Reducible { submodule: span });
                }
            }
            let count = (field.p() as u128).pow(kernel.len() as u32) - 1;
            if count > KERNEL_ENUM_CAP as u128 {
                let better = match &fallback {
                    Some((_, k)) => kernel.len() < k.len(),
                    None => count <= KERNEL_ENUM_HARD_CAP as u128,
                };
                if better {
                    fallback = Some((candidate, kernel));
                }
                continue;
            }
            return run_norton(rep, &candidate, &kernel);
        }
    }
    if let Some((theta, kernel)) = fallback {
        return run_norton(rep, &theta, &kernel);
    }
    Err(RepError::Inconclusive)
}

fn run_norton(
    rep: &MatrixRep,
    theta: &Mat<PrimeField>,
    kernel: &[Vec<u64>],
) -> Result<Irreducibility, RepError> {
    let field = rep.field();
    let dim = rep.dim();
    for v in nonzero_combinations(field, kernel) {
        let span = spinup(rep, &v)?;
        if span.rows() < dim {
            debug_assert!(is_invariant(rep, &span));
            return Ok(Irreducibility::Reducible { submodule: span });
        }
    }
    // Transpose side: one kernel vector suffices.
    let gens_t: Vec<Mat<PrimeField>> = rep.gens().iter().map(|m| m.transpose()).collect();
    let kernel_t = theta.transpose().kernel_basis();
    let w = kernel_t.first().expect("transpose has equal nullity");
    let span_t = spin_matrices(field, dim, &gens_t, w)?;
    if span_t.rows() < dim {
        // The annihilator of the transpose-side span is a proper
        // invariant subspace on the original module.
        let ann = span_t.kernel_basis();
        let mut basis = EchelonBasis::new(field, dim);
        for v in &ann {
            basis.insert(v);
        }
        let submodule = basis.to_matrix();
        debug_assert!(submodule.rows() > 0 && submodule.rows() < dim);
        debug_assert!(is_invariant(rep, &submodule));
        return Ok(Irreducibility::Reducible { submodule });
    }
    Ok(Irreducibility::Irreducible)
}

fn is_invariant(rep: &MatrixRep, basis_rows: &Mat<PrimeField>) -> bool {
    let mut basis = EchelonBasis::new(rep.field(), rep.dim());
    for i in 0..basis_rows.rows() {
        basis.insert(basis_rows.row(i));
    }
    (0..basis_rows.rows()).all(|i| {
        rep.gens()
            .iter()
            .all(|m| basis.contains(&m.apply(basis_rows.row(i))))
    })
}

/// All nonzero vectors of the span of `kernel`, by odometer over the
/// coefficient tuples.
fn nonzero_combinations(field: PrimeField, kernel: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let p = field.p();
    let k = kernel.len();
    let dim = kernel[0].len();
    let total = (p as u128).pow(k as u32);
    let mut out = Vec::new();
    for idx in 1..total {
        let mut rem = idx;
        let mut v = vec![0u64; dim];
        for vec in kernel {
            let c = (rem % p as u128) as u64;
            rem /= p as u128;
            if c != 0 {
                for (a, b) in v.iter_mut().zip(vec) {
                    *a = field.add(a, &field.mul(&c, b));
                }
            }
        }
        out.push(v);
    }
    out
}

/// A pseudo-random element of the enveloping algebra: a small sum of
/// scaled words in the generator matrices.
fn random_algebra_element(rep: &MatrixRep, rng: &mut ChaCha8Rng) -> Mat<PrimeField> {
    let field = rep.field();
    let dim = rep.dim();
    let p = field.p();
    let nwords = 2 + (rng.random_range(0..3u8) as usize);
    let mut theta = Mat::zeros(field, dim, dim);
    // Sometimes mix in a scalar so that singular combinations appear
    // even for very small generator sets.
    let c0 = rng.random_range(0..p);
    if c0 != 0 {
        theta = theta.add(&Mat::identity(field, dim).scale(&c0));
    }
    for _ in 0..nwords {
        let len = rng.random_range(1..=3usize);
        let mut word = Mat::identity(field, dim);
        for _ in 0..len {
            if rep.gens().is_empty() {
                break;
            }
            let gi = rng.random_range(0..rep.gens().len());
            word = word.mul(&rep.gens()[gi]);
        }
        let c = rng.random_range(0..p);
        theta = theta.add(&word.scale(&c));
    }
    theta
}

/// Restriction of the action to an invariant subspace given by echelon
/// basis rows.
pub fn restriction(rep: &MatrixRep, basis_rows: &Mat<PrimeField>) -> MatrixRep {
    let field = rep.field();
    let bt = basis_rows.transpose(); // columns = basis vectors
    let gens = rep
        .gens()
        .iter()
        .map(|m| {
            let image = m.mul(&bt);
            bt.solve_mat(&image).expect("invariant subspace")
        })
        .collect();
    MatrixRep::with_dim(rep.group().clone(), field, basis_rows.rows(), gens)
        .expect("restriction of a representation")
}

/// The induced action on the quotient by an invariant subspace.
pub fn quotient(rep: &MatrixRep, basis_rows: &Mat<PrimeField>) -> MatrixRep {
    let field = rep.field();
    let dim = rep.dim();
    let k = basis_rows.rows();
    // Complete the subspace basis with standard vectors at the free
    // (non-pivot) coordinates.
    let mut basis = EchelonBasis::new(field, dim);
    for i in 0..k {
        basis.insert(basis_rows.row(i));
    }
    let mut change = Mat::zeros(field, dim, dim);
    for (j, row) in basis_rows.row_vecs().iter().enumerate() {
        for i in 0..dim {
            *change.at_mut(i, j) = row[i];
        }
    }
    let mut col = k;
    for free in 0..dim {
        if basis.pivots().contains(&free) {
            continue;
        }
        *change.at_mut(free, col) = field.one();
        col += 1;
    }
    debug_assert_eq!(col, dim);
    let inv = change.inverse().expect("basis completion is invertible");
    let gens = rep
        .gens()
        .iter()
        .map(|m| {
            let conj = inv.mul(&m.mul(&change));
            let mut q = Mat::zeros(field, dim - k, dim - k);
            for i in k..dim {
                for j in k..dim {
                    *q.at_mut(i - k, j - k) = conj.at(i, j).clone();
                }
                for j in 0..k {
                    debug_assert!(field.is_zero(conj.at(i, j)), "subspace not invariant");
                }
            }
            q
        })
        .collect();
    MatrixRep::with_dim(rep.group().clone(), field, dim - k, gens)
        .expect("quotient of a representation")
}

/// Composition factors with multiplicities (Jordan-Hoelder multiset).
pub fn chop(rep: &MatrixRep) -> Result<Vec<(MatrixRep, usize)>, RepError> {
    chop_with_seed(rep, MEATAXE_SEED)
}

/// Same as [`chop`] but with an explicit seed for the element sequence;
/// the factor multiset must not depend on the seed.
pub fn chop_with_seed(rep: &MatrixRep, seed: u64) -> Result<Vec<(MatrixRep, usize)>, RepError> {
    if rep.dim() == 0 {
        return Ok(Vec::new());
    }
    match norton_with_seed(rep, seed)? {
        Irreducibility::Irreducible => Ok(vec![(rep.clone(), 1)]),
        Irreducibility::Reducible { submodule } => {
            let sub = restriction(rep, &submodule);
            let quot = quotient(rep, &submodule);
            let mut factors = chop_with_seed(&sub, seed)?;
            for (rep, count) in chop_with_seed(&quot, seed)? {
                merge_factor(&mut factors, rep, count)?;
            }
            factors.sort_by_key(|(r, _)| (r.dim(), r.character()));
            Ok(factors)
        }
    }
}

pub(crate) fn merge_factor(
    factors: &mut Vec<(MatrixRep, usize)>,
    rep: MatrixRep,
    count: usize,
) -> Result<(), RepError> {
    for (existing, c) in factors.iter_mut() {
        if iso_test(existing, &rep)? {
            *c += count;
            return Ok(());
        }
    }
    factors.push((rep, count));
    Ok(())
}

/// Isomorphism test for irreducible representations: dimension and
/// character fingerprints first, then an exact intertwiner. For
/// irreducibles any nonzero intertwiner is invertible; a singular one
/// flags non-irreducible input.
pub fn iso_test(a: &MatrixRep, b: &MatrixRep) -> Result<bool, RepError> {
    a.require_same_context(b)?;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.character() != b.character() {
        return Ok(false);
    }
    let field = a.field();
    let d = a.dim();
    // Solve A_g X = X B_g for all generators: unknowns X[i][j] flattened
    // row-major.
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (ag, bg) in a.gens().iter().zip(b.gens()) {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![0u64; d * d];
                for k in 0..d {
                    row[k * d + j] = field.add(&row[k * d + j], ag.at(i, k));
                    let t = field.neg(bg.at(k, j));
                    row[i * d + k] = field.add(&row[i * d + k], &t);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        // Trivial group: everything intertwines; irreducibles are 1-dim.
        return Ok(a.dim() == 1 && b.dim() == 1);
    }
    let system = Mat::from_rows(field, rows);
    let kernel = system.kernel_basis();
    let Some(first) = kernel.first() else {
        return Ok(false);
    };
    let x = Mat::from_fn(field, d, d, |i, j| first[i * d + j]);
    if x.inverse().is_some() {
        Ok(true)
    } else {
        Err(RepError::NonIrreducible)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::group::PermGroup;
    use std::sync::Arc;

    fn natural_s3_f2() -> MatrixRep {
        let g = Arc::new(PermGroup::symmetric(3));
        MatrixRep::natural(g, PrimeField::new(2))
    }

    #[test]
    fn spinup_fixed_line_in_regular_z3() {
        let g = Arc::new(PermGroup::cyclic(3));
        let rep = MatrixRep::regular(g, PrimeField::new(3));
        let span = spinup(&rep, &[1, 1, 1]).unwrap();
        assert_eq!(span.rows(), 1);
    }

    #[test]
    fn spinup_fills_space_from_e1_in_natural_s3() {
        // Over F_2 the 3-point natural module spins to everything from
        // e_1: brute-force orbit closure gives the full space.
        let rep = natural_s3_f2();
        let span = spinup(&rep, &[1, 0, 0]).unwrap();
        assert_eq!(span.rows(), 3);
    }

    #[test]
    fn spinup_rejects_zero() {
        let rep = natural_s3_f2();
        assert!(matches!(
            spinup(&rep, &[0, 0, 0]),
            Err(RepError::ZeroVector)
        ));
    }

    /// The 2-dimensional quotient of the natural S_3 module over F_2:
    /// the sum-zero... over F_2 the all-ones vector spans a trivial
    /// submodule; the quotient is the natural 2-dimensional simple.
    fn two_dim_s3_f2() -> MatrixRep {
        let rep = natural_s3_f2();
        let line = spinup(&rep, &[1, 1, 1]).unwrap();
        assert_eq!(line.rows(), 1);
        quotient(&rep, &line)
    }

    #[test]
    fn natural_two_dim_s3_is_irreducible() {
        // Checkable by hand: none of the 3 lines over F_2 is invariant.
        let d = two_dim_s3_f2();
        assert!(matches!(
            norton_irreducible(&d).unwrap(),
            Irreducibility::Irreducible
        ));
    }

    #[test]
    fn regular_z3_char3_is_reducible_with_fixed_line() {
        let g = Arc::new(PermGroup::cyclic(3));
        let rep = MatrixRep::regular(g, PrimeField::new(3));
        match norton_irreducible(&rep).unwrap() {
            Irreducibility::Reducible { submodule } => {
                assert!(submodule.rows() < 3);
            }
            Irreducibility::Irreducible => panic!("unipotent action must be reducible"),
        }
    }

    #[test]
    fn one_dim_is_irreducible() {
        let g = Arc::new(PermGroup::cyclic(3));
        let rep = MatrixRep::trivial(g, PrimeField::new(5));
        assert!(matches!(
            norton_irreducible(&rep).unwrap(),
            Irreducibility::Irreducible
        ));
    }

    #[test]
    fn chop_regular_z3_char3_gives_three_trivials() {
        let g = Arc::new(PermGroup::cyclic(3));
        let rep = MatrixRep::regular(g.clone(), PrimeField::new(3));
        let factors = chop(&rep).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.dim(), 1);
        assert_eq!(factors[0].1, 3);
        let triv = MatrixRep::trivial(g, PrimeField::new(3));
        assert!(iso_test(&factors[0].0, &triv).unwrap());
    }

    #[test]
    fn chop_tensor_square_of_d_over_f2() {
        // D (x) D for the 2-dim simple of S_3 over F_2 has factors
        // {trivial, trivial, D}; Brauer-character bookkeeping on the
        // 2-regular classes gives (4,1) = 2*(1,1) + (2,-1).
        let d = two_dim_s3_f2();
        let sq = d.tensor(&d).unwrap();
        let factors = chop(&sq).unwrap();
        let mut by_dim: Vec<(usize, usize)> =
            factors.iter().map(|(r, c)| (r.dim(), *c)).collect();
        by_dim.sort_unstable();
        assert_eq!(by_dim, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn chop_irreducible_is_itself() {
        let d = two_dim_s3_f2();
        let factors = chop(&d).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 1);
        assert!(iso_test(&factors[0].0, &d).unwrap());
    }

    #[test]
    fn iso_test_basics() {
        let g = Arc::new(PermGroup::symmetric(3));
        let f2 = PrimeField::new(2);
        let triv = MatrixRep::trivial(g.clone(), f2);
        let d = two_dim_s3_f2();
        assert!(iso_test(&d, &d).unwrap());
        assert!(!iso_test(&triv, &d).unwrap());
        // Trivial and sign coincide over F_2.
        let sign = MatrixRep::new(
            g,
            f2,
            vec![Mat::identity(f2, 1), Mat::identity(f2, 1)],
        )
        .unwrap();
        assert!(iso_test(&triv, &sign).unwrap());
    }

    #[test]
    fn iso_test_flags_non_irreducible_inputs() {
        // trivial (+) sign over F_3: the intertwiner space is the
        // diagonal matrices, whose echelon basis vectors are singular.
        let g = Arc::new(PermGroup::symmetric(3));
        let f = PrimeField::new(3);
        let gens = vec![
            Mat::from_i64(f, &[&[1, 0], &[0, -1]]),
            Mat::from_i64(f, &[&[1, 0], &[0, 1]]),
        ];
        let rep = MatrixRep::new(g, f, gens).unwrap();
        assert!(matches!(
            iso_test(&rep, &rep),
            Err(RepError::NonIrreducible)
        ));
    }

    #[test]
    fn iso_test_distinguishes_conjugated_copy() {
        // Conjugate D by a random invertible matrix; still isomorphic.
        let d = two_dim_s3_f2();
        let f = PrimeField::new(2);
        let t = Mat::from_i64(f, &[&[1, 1], &[0, 1]]);
        let tinv = t.inverse().unwrap();
        let gens = d.gens().iter().map(|m| tinv.mul(&m.mul(&t))).collect();
        let conj = MatrixRep::new(d.group().clone(), f, gens).unwrap();
        assert!(iso_test(&d, &conj).unwrap());
    }

    #[test]
    fn chop_is_seed_stable() {
        // Jordan-Hoelder: the factor multiset is invariant under
        // different certificate orders.
        let g = Arc::new(PermGroup::symmetric(3));
        let rep = MatrixRep::regular(g, PrimeField::new(2));
        let base = chop(&rep).unwrap();
        for seed in [1u64, 7, 99] {
            let other = chop_with_seed(&rep, seed).unwrap();
            assert_eq!(base.len(), other.len());
            for (r, c) in &base {
                let found = other
                    .iter()
                    .find(|(r2, _)| iso_test(r, r2).unwrap())
                    .expect("factor present under every seed");
                assert_eq!(*c, found.1);
            }
        }
    }

    #[test]
    fn dimension_bookkeeping() {
        let g = Arc::new(PermGroup::symmetric(4));
        let rep = MatrixRep::regular(g, PrimeField::new(2));
        let factors = chop(&rep).unwrap();
        let total: usize = factors.iter().map(|(r, c)| r.dim() * c).sum();
        assert_eq!(total, 24);
    }
}
