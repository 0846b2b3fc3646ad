//! Exact dense matrices over a field: Gauss-Jordan reduction, kernels,
//! solving, and minimal polynomials. Row-major storage.

use std::fmt;

use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Result of Gauss-Jordan elimination.
pub struct Rref<F: Field> {
    pub mat: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    *self.at(i, j) == if i == j { self.field.one() } else { self.field.zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.add(self.at(i, j), other.at(i, j)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.mul(self.at(i, j), c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.at(k, j));
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = f.add(&cur, &t);
                }
            }
        }
        out
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    if !f.is_zero(self.at(i, j)) {
                        acc = f.add(&acc, &f.mul(self.at(i, j), &v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> F::Elem {
        assert!(self.is_square());
        let f = self.field;
        let mut acc = f.zero();
        for i in 0..self.rows {
            acc = f.add(&acc, self.at(i, i));
        }
        acc
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let f = self.field;
        Mat::from_fn(
            f,
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                f.mul(
                    self.at(i / other.rows, j / other.cols),
                    other.at(i % other.rows, j % other.cols),
                )
            },
        )
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out
    }

    /// Exact Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.at(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, p * m.cols + j);
                }
            }
            let inv = f.inv(m.at(r, c));
            for j in c..m.cols {
                let v = f.mul(m.at(r, j), &inv);
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.at(i, c)) {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in c..m.cols {
                    let t = f.mul(&factor, m.at(r, j));
                    let cur = m.at(i, j).clone();
                    *m.at_mut(i, j) = f.sub(&cur, &t);
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref { mat: m, pivots }
    }

    /// Canonical kernel basis: one vector per free column, with 1 at the
    /// free column and the negated reduced entries at the pivot columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let Rref { mat, pivots } = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(mat.at(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Solves `self * x = rhs`, returning any particular solution.
    pub fn solve(&self, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(rhs.len(), self.rows);
        let f = self.field;
        let mut aug = Mat::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = rhs[i].clone();
        }
        let Rref { mat, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = mat.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_mat(&self, rhs: &Mat<F>) -> Option<Mat<F>> {
        assert_eq!(self.rows, rhs.rows);
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            let b: Vec<F::Elem> = (0..rhs.rows).map(|i| rhs.at(i, j).clone()).collect();
            cols.push(self.solve(&b)?);
        }
        let f = self.field;
        Some(Mat::from_fn(f, self.cols, rhs.cols, |i, j| cols[j][i].clone()))
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut aug = Mat::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = f.one();
        }
        let Rref { mat, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(f, n, n, |i, j| mat.at(i, n + j).clone()))
    }
}

/// Reduced row echelon form together with a canonical kernel basis.
/// Every kernel vector v satisfies `M v = 0` and the count is
/// `cols - rank`.
pub fn kernel_and_rref<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<Vec<F::Elem>>) {
    (m.rref().mat, m.kernel_basis())
}

/// Monic polynomial of least degree annihilating the square matrix `m`,
/// found by iterating powers of `m` as flat vectors until the first
/// linear dependence.
pub fn minimal_polynomial<F: Field>(m: &Mat<F>) -> Poly<F> {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Poly::one(f);
    }
    // Echelonized flat powers with combination bookkeeping: row k holds a
    // reduced vec(M^j) and the coefficients expressing it in terms of the
    // original powers.
    let mut rows: Vec<(Vec<F::Elem>, Vec<F::Elem>, usize)> = Vec::new(); // (vec, combo, pivot)
    let mut power = Mat::identity(f, n);
    for j in 0..=n {
        let mut v = power.data.clone();
        let mut combo = vec![f.zero(); j + 1];
        combo[j] = f.one();
        for (row, rcombo, pivot) in &rows {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let factor = v[*pivot].clone();
            for (a, b) in v.iter_mut().zip(row.iter()) {
                let t = f.mul(&factor, b);
                *a = f.sub(a, &t);
            }
            // Earlier combos are zero beyond their own creation index,
            // so the shorter current combo covers every nonzero entry.
            for (a, c) in combo.iter_mut().zip(rcombo.iter()) {
                let t = f.mul(&factor, c);
                *a = f.sub(a, &t);
            }
        }
        match v.iter().position(|e| !f.is_zero(e)) {
            None => {
                // combo[j] stayed 1, so the polynomial is monic already.
                return Poly::from_coeffs(f, combo);
            }
            Some(pivot) => {
                let inv = f.inv(&v[pivot]);
                for a in v.iter_mut() {
                    *a = f.mul(a, &inv);
                }
                let mut c = combo;
                for a in c.iter_mut() {
                    *a = f.mul(a, &inv);
                }
                c.resize(n + 1, f.zero());
                rows.push((v, c, pivot));
            }
        }
        if j < n {
            power = power.mul(m);
        }
    }
    unreachable!("a square matrix satisfies a polynomial of degree <= its size");
}

/// Evaluates a polynomial at a square matrix.
pub fn eval_poly_at_matrix<F: Field>(p: &Poly<F>, m: &Mat<F>) -> Mat<F> {
    let f = m.field();
    let n = m.rows();
    let mut acc = Mat::zeros(f, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            let cur = acc.at(i, i).clone();
            *acc.at_mut(i, i) = f.add(&cur, c);
        }
    }
    acc
}

/// Incrementally maintained row echelon basis of a subspace; used by
/// spin-up, ideal membership, and radical complements.
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for (a, b) in v.iter_mut().zip(row.iter()) {
                let t = f.mul(&factor, b);
                *a = f.sub(a, &t);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|e| self.field.is_zero(e))
    }

    /// Inserts `v` if independent; returns the reduced, normalized new
    /// basis row, or `None` when `v` already lies in the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut v = self.reduce(v);
        let pivot = v.iter().position(|e| !f.is_zero(e))?;
        let inv = f.inv(&v[pivot]);
        for a in v.iter_mut() {
            *a = f.mul(a, &inv);
        }
        // Keep full reduction so the basis stays in RREF.
        for (row, &p) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(p != pivot);
            if f.is_zero(&row[pivot]) {
                continue;
            }
            let factor = row[pivot].clone();
            for (a, b) in row.iter_mut().zip(v.iter()) {
                let t = f.mul(&factor, b);
                *a = f.sub(a, &t);
            }
        }
        let idx = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(idx, v.clone());
        self.pivots.insert(idx, pivot);
        Some(v)
    }

    /// The basis as a matrix with one row per basis vector, ordered by
    /// pivot column (canonical for a given subspace).
    pub fn to_matrix(&self) -> Mat<F> {
        Mat::from_rows(self.field, self.rows.clone())
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
