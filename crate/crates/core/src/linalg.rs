//! Dense linear algebra over the rationals.
//!
//! Everything here is exact: rank decisions, nullspaces and subspace lattice
//! operations never round. Subspaces are kept in reduced row-echelon form so
//! that two bases of the same space compare equal with `==`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Element of the ground field: an arbitrary-precision rational in lowest terms.
pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("malformed rational {0:?}")]
    MalformedScalar(String),
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"` (q nonzero) into a reduced rational.
pub fn parse_scalar(s: &str) -> Result<Scalar, LinalgError> {
    let bad = || LinalgError::MalformedScalar(s.to_string());
    let t = s.trim();
    if t.is_empty() || t != s {
        return Err(bad());
    }
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Scalar::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            if d.starts_with(['+', '-']) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Mat {
            rows: n,
            cols,
            entries,
        })
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Mat::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let mut m = Mat::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds a square matrix from its columns given as one column-major vector.
    pub fn from_col_major(n: usize, v: &[Scalar]) -> Self {
        assert_eq!(v.len(), n * n, "column-major vector has wrong length");
        Mat::from_fn(n, n, |r, c| v[c * n + r].clone())
    }

    pub fn to_col_major(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                v.push(self.get(r, c).clone());
            }
        }
        v
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Mat::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let red = rref(&aug);
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| red.reduced.get(r, c + n).clone()))
    }

    pub fn pow(&self, k: usize) -> Mat {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Places `block` with its top-left corner at (`r0`, `c0`).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;

    fn mul(self, rhs: &'a Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;

    fn add(self, rhs: &'a Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;

    fn sub(self, rhs: &'a Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;

    fn neg(self) -> Mat {
        self.scale(&-Scalar::one())
    }
}

/// `acc += s * v`, skipping zero entries of `v`.
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Incremental row-space accumulator.
///
/// Rows are reduced against the current pivots as they arrive, so the
/// memory held is bounded by the rank rather than the number of equations.
/// Each stored row is sparse, normalized to a leading 1, and has zeros left
/// of its pivot.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    pivots: BTreeMap<usize, Vec<(usize, Scalar)>>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Adds a row; returns true if it was independent of the rows seen so far.
    pub fn push(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let mut start = 0;
        loop {
            let Some(c) = (start..self.cols).find(|&j| !row[j].is_zero()) else {
                return false;
            };
            match self.pivots.get(&c) {
                Some(prow) => {
                    let f = row[c].clone();
                    for (j, v) in prow {
                        row[*j] -= &f * v;
                    }
                    start = c + 1;
                }
                None => {
                    let inv = Scalar::one() / &row[c];
                    let sparse: Vec<(usize, Scalar)> = (c..self.cols)
                        .filter(|&j| !row[j].is_zero())
                        .map(|j| (j, &row[j] * &inv))
                        .collect();
                    self.pivots.insert(c, sparse);
                    return true;
                }
            }
        }
    }

    /// Returns the fully reduced echelon rows as (pivot column, dense row), by increasing pivot.
    pub fn into_rref(self) -> Vec<(usize, Vec<Scalar>)> {
        let cols = self.cols;
        let mut rows: Vec<(usize, Vec<Scalar>)> = self
            .pivots
            .into_iter()
            .map(|(p, sparse)| {
                let mut dense = vec![Scalar::zero(); cols];
                for (j, v) in sparse {
                    dense[j] = v;
                }
                (p, dense)
            })
            .collect();
        // Back-substitution, from the last pivot upward.
        for i in (0..rows.len()).rev() {
            let (p, _) = rows[i];
            let (upper, lower) = rows.split_at_mut(i);
            let prow = &lower[0].1;
            for (_, row) in upper.iter_mut() {
                if !row[p].is_zero() {
                    let f = row[p].clone();
                    for j in p..cols {
                        if !prow[j].is_zero() {
                            let d = &f * &prow[j];
                            row[j] -= d;
                        }
                    }
                }
            }
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Mat) -> Rref {
    let mut red = RowReducer::new(m.cols());
    for r in 0..m.rows() {
        red.push(m.row(r).to_vec());
    }
    let rows = red.into_rref();
    let rank = rows.len();
    let mut reduced = Mat::zeros(m.rows(), m.cols());
    let mut pivots = Vec::with_capacity(rank);
    for (i, (p, row)) in rows.into_iter().enumerate() {
        pivots.push(p);
        for (c, v) in row.into_iter().enumerate() {
            reduced.set(i, c, v);
        }
    }
    Rref {
        reduced,
        pivots,
        rank,
    }
}

/// Kernel basis from fully reduced echelon rows, one vector per free column.
pub(crate) fn kernel_from_rref(cols: usize, rows: &[(usize, Vec<Scalar>)]) -> Vec<Vec<Scalar>> {
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for (p, _) in rows {
            v[*p] = true;
        }
        v
    };
    (0..cols)
        .filter(|&f| !pivot_set[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (p, row) in rows {
                if !row[f].is_zero() {
                    v[*p] = -row[f].clone();
                }
            }
            v
        })
        .collect()
}

pub fn nullspace(m: &Mat) -> SubspaceBasis {
    let mut red = RowReducer::new(m.cols());
    for r in 0..m.rows() {
        red.push(m.row(r).to_vec());
    }
    let rows = red.into_rref();
    SubspaceBasis::canonical(m.cols(), kernel_from_rref(m.cols(), &rows))
}

/// A subspace of `F^ambient_dim`, stored as its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vectors
            .iter()
            .map(|v| format!("({})", v.iter().map(format_scalar).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "span[{}]{{{}}}", self.ambient_dim, vs.join(", "))
    }
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::coordinate(ambient_dim, 0..ambient_dim)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vecs = indices.into_iter().map(|i| unit_vec(ambient_dim, i)).collect();
        Self::canonical(ambient_dim, vecs)
    }

    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        Ok(Self::canonical(ambient_dim, vectors))
    }

    fn canonical(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let mut red = RowReducer::new(ambient_dim);
        for v in vectors {
            if red.is_full() {
                break;
            }
            red.push(v);
        }
        SubspaceBasis {
            ambient_dim,
            vectors: red.into_rref().into_iter().map(|(_, v)| v).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<Scalar>> {
        self.vectors
    }

    fn pivot_of(v: &[Scalar]) -> usize {
        v.iter().position(|x| !x.is_zero()).expect("zero vector in echelon basis")
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| Self::pivot_of(v)).collect()
    }

    fn check_len(&self, n: usize) -> Result<(), LinalgError> {
        if n != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: n,
            });
        }
        Ok(())
    }

    /// Component of `v` left after subtracting its projection along the echelon basis.
    fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for b in &self.vectors {
            let p = Self::pivot_of(b);
            if !r[p].is_zero() {
                let f = -r[p].clone();
                axpy(&mut r, &f, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        Ok(is_zero_vec(&self.residual(v)))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        self.check_len(v.len())?;
        if !is_zero_vec(&self.residual(v)) {
            return Ok(None);
        }
        // Reduced echelon: the coefficient of basis vector i is v at its pivot.
        Ok(Some(self.vectors.iter().map(|b| v[Self::pivot_of(b)].clone()).collect()))
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> Result<bool, LinalgError> {
        self.check_len(other.ambient_dim)?;
        Ok(other.vectors.iter().all(|v| is_zero_vec(&self.residual(v))))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        self.check_len(other.ambient_dim)?;
        let vecs = self.vectors.iter().chain(&other.vectors).cloned().collect();
        Ok(Self::canonical(self.ambient_dim, vecs))
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        self.check_len(other.ambient_dim)?;
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Self::zero(self.ambient_dim));
        }
        // Solve sum_i c_i a_i - sum_j e_j b_j = 0; each solution yields sum_i c_i a_i.
        let m = Mat::from_fn(self.ambient_dim, da + db, |r, c| {
            if c < da {
                self.vectors[c][r].clone()
            } else {
                -other.vectors[c - da][r].clone()
            }
        });
        let ker = nullspace(&m);
        let vecs = ker
            .vectors
            .iter()
            .map(|coef| {
                let mut v = vec![Scalar::zero(); self.ambient_dim];
                for (c, a) in coef[..da].iter().zip(&self.vectors) {
                    axpy(&mut v, c, a);
                }
                v
            })
            .collect();
        Ok(Self::canonical(self.ambient_dim, vecs))
    }
}

/// Greedy complement of `inner` inside the coordinate subspace spanned by `allowed`.
///
/// Standard basis vectors `e_i` are tried in increasing `i` and kept when they
/// are independent of everything chosen so far.
pub fn extend_to_complement(inner: &SubspaceBasis, allowed: &[usize]) -> SubspaceBasis {
    let n = inner.ambient_dim();
    let mut idx = allowed.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let mut span = RowReducer::new(n);
    for v in inner.vectors() {
        span.push(v.clone());
    }
    let mut chosen = Vec::new();
    for i in idx {
        if span.push(unit_vec(n, i)) {
            chosen.push(i);
        }
    }
    SubspaceBasis::coordinate(n, chosen)
}
