//! Exact linear algebra over the rationals.
//!
//! Every computation in the crate bottoms out here: ranks, kernels and
//! quotient coordinates are computed by row reduction over `BigRational`,
//! so every dimension reported elsewhere is an exact integer.
//!
//! The pivot rule is fixed: scan columns left to right, and in each column
//! take the topmost remaining row with a nonzero entry. Reduced row echelon
//! forms produced this way are canonical for the row space, which is what
//! makes quotient-space representatives reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Coefficient field for all section computations.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector {index} of the subspace is not contained in the ambient span")]
    ContainmentViolation { index: usize },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows only, in pivot order.
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: zero_vec(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinAlgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols, entries })
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self, LinAlgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinAlgError::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must equal rows * cols");
        ExactMatrix { rows, cols, entries: data.iter().map(|&x| int(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinAlgError> {
        if other.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.entries)
    }

    pub fn echelon(&self) -> Echelon {
        rref_rows(self.row_vecs(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Canonical kernel basis: the reduced echelon basis of the null space.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<Vec<Scalar>> = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = zero_vec(n);
                v[f] = Scalar::one();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect();
        span_basis(&raw, n)
    }

    /// One solution of `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let augmented: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let ech = rref_rows(augmented, self.cols + 1);
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(self.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(Some(x))
    }
}

/// Row-reduces `rows` (each of length `cols`) to reduced echelon form.
pub fn rref_rows(mut rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, cols }
}

/// Canonical (reduced echelon) basis of the span of `vectors` in dimension `n`.
pub fn span_basis(vectors: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    rref_rows(vectors.to_vec(), n).rows
}

pub fn span_dim(vectors: &[Vec<Scalar>], n: usize) -> usize {
    rref_rows(vectors.to_vec(), n).pivots.len()
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let n = v.len();
    let ech = rref_rows(vectors.to_vec(), n);
    is_zero_vec(&reduce_by(&ech, v))
}

fn reduce_by(ech: &Echelon, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (j, x) in row.iter().enumerate().skip(p) {
            if !x.is_zero() {
                out[j] -= &f * x;
            }
        }
    }
    out
}

/// `dim span(a) - dim span(b)` after checking that span(b) lies in span(a).
pub fn subspace_quotient_dim(
    span_a: &[Vec<Scalar>],
    span_b: &[Vec<Scalar>],
) -> Result<usize, LinAlgError> {
    let n = span_a
        .first()
        .or_else(|| span_b.first())
        .map(Vec::len)
        .unwrap_or(0);
    for v in span_a.iter().chain(span_b) {
        if v.len() != n {
            return Err(LinAlgError::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let ech = rref_rows(span_a.to_vec(), n);
    for (index, b) in span_b.iter().enumerate() {
        if !is_zero_vec(&reduce_by(&ech, b)) {
            return Err(LinAlgError::ContainmentViolation { index });
        }
    }
    Ok(ech.pivots.len() - span_dim(span_b, n))
}

/// Quotient of `F^n` by a subspace, with canonical representatives.
///
/// A vector is reduced by clearing the pivot coordinates of the subspace's
/// reduced echelon basis. Two vectors are congruent iff their reductions are
/// equal, and the remaining (free) coordinates give quotient coordinates.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient: usize,
    sub: Echelon,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(ambient: usize, generators: &[Vec<Scalar>]) -> Self {
        let sub = rref_rows(generators.to_vec(), ambient);
        let mut is_pivot = vec![false; ambient];
        for &p in &sub.pivots {
            is_pivot[p] = true;
        }
        let free = (0..ambient).filter(|&j| !is_pivot[j]).collect();
        QuotientSpace { ambient, sub, free }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn sub_dim(&self) -> usize {
        self.sub.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.ambient);
        reduce_by(&self.sub, v)
    }

    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.free.iter().map(|&j| r[j].clone()).collect()
    }

    /// Canonical representative with the given quotient coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(coords.len(), self.free.len());
        let mut v = zero_vec(self.ambient);
        for (&j, c) in self.free.iter().zip(coords) {
            v[j] = c.clone();
        }
        v
    }

    pub fn is_zero(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }
}

/// A subspace of a quotient `F^n / W`, stored by a reduced echelon basis in
/// quotient coordinates. Used for spaces of sections cut out by linear
/// conditions and then taken modulo gauge or Euler moves.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub quotient: QuotientSpace,
    basis: Echelon,
}

impl SubQuotient {
    /// `solutions` span a subspace S of F^n containing W; the result is S/W.
    pub fn new(quotient: QuotientSpace, solutions: &[Vec<Scalar>]) -> Self {
        let coords: Vec<Vec<Scalar>> = solutions.iter().map(|s| quotient.coords(s)).collect();
        let basis = rref_rows(coords, quotient.dim());
        SubQuotient { quotient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.pivots.len()
    }

    /// Canonical ambient representatives of the basis elements.
    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.rows.iter().map(|r| self.quotient.lift(r)).collect()
    }

    /// Ambient vector with the given coordinates in the canonical basis.
    pub fn lift_basis_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(coords.len(), self.dim());
        let mut q = zero_vec(self.quotient.dim());
        for (row, a) in self.basis.rows.iter().zip(coords) {
            if a.is_zero() {
                continue;
            }
            for (x, y) in q.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x += a * y;
                }
            }
        }
        self.quotient.lift(&q)
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not in
    /// the subspace.
    pub fn coords_in_basis(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let q = self.quotient.coords(v);
        let c: Vec<Scalar> = self.basis.pivots.iter().map(|&p| q[p].clone()).collect();
        let mut rebuilt = zero_vec(q.len());
        for (row, a) in self.basis.rows.iter().zip(&c) {
            if a.is_zero() {
                continue;
            }
            for (x, y) in rebuilt.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x += a * y;
                }
            }
        }
        (rebuilt == q).then_some(c)
    }
}
