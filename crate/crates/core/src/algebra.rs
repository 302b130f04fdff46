//! Multiplicative n-Hom Lie superalgebras given by structure constants.
//!
//! The bracket is stored only on canonical (weakly increasing) index tuples.
//! Every other ordered tuple is reached by adjacent transpositions, each one
//! contributing the factor `-(-1)^{|x_i||x_{i+1}|}`. A canonical tuple with a
//! repeated even index is forced to zero; a repeated odd index is not.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{axpy, int, is_zero_vec, nullspace, Mat, Scalar, SubspaceBasis};
use crate::parity::Parity;

/// Witnesses kept per axiom in a [`ValidationReport`].
pub const MAX_WITNESSES_PER_AXIOM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),
    #[error("alpha must be {dim}x{dim}, got {rows}x{cols}")]
    AlphaShape { dim: usize, rows: usize, cols: usize },
    #[error("tuple {tuple:?} has length {len}, arity is {arity}")]
    TupleLength { tuple: Vec<usize>, len: usize, arity: usize },
    #[error("tuple {0:?} is not weakly increasing")]
    NotWeaklyIncreasing(Vec<usize>),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket value for {tuple:?} has length {len}, dimension is {dim}")]
    ValueLength { tuple: Vec<usize>, len: usize, dim: usize },
    #[error("tuple {0:?} listed twice")]
    DuplicateTuple(Vec<usize>),
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("argument has length {found}, dimension is {expected}")]
    ArgumentLength { expected: usize, found: usize },
    #[error("degree law violated at {tuple:?}: component e_{index} has the wrong parity")]
    DegreeLaw { tuple: Vec<usize>, index: usize },
    #[error("basis change must be an even invertible {0}x{0} matrix")]
    BadBasisChange(usize),
}

/// Sorts `indices` into canonical order and returns the accumulated graded sign.
///
/// The sign is `0` when the sorted tuple repeats an even index.
pub fn canonicalize_tuple(indices: &[usize], parity: &[Parity]) -> Result<(Vec<usize>, i32), AlgebraError> {
    if let Some(&i) = indices.iter().find(|&&i| i >= parity.len()) {
        return Err(AlgebraError::IndexOutOfRange {
            index: i,
            dim: parity.len(),
        });
    }
    let mut t = indices.to_vec();
    let mut sign = 1;
    for end in (1..t.len()).rev() {
        for j in 0..end {
            if t[j] > t[j + 1] {
                // -(-1)^{|x_j||x_{j+1}|}
                if !(parity[t[j]] * parity[t[j + 1]]).is_odd() {
                    sign = -sign;
                }
                t.swap(j, j + 1);
            }
        }
    }
    if t.windows(2).any(|w| w[0] == w[1] && !parity[w[0]].is_odd()) {
        sign = 0;
    }
    Ok((t, sign))
}

/// All weakly increasing tuples of length `n` over `0..d`, in lexicographic order.
pub fn weakly_increasing_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut t = vec![0; n];
    loop {
        out.push(t.clone());
        let Some(pos) = (0..n).rev().find(|&i| t[i] + 1 < d) else {
            return out;
        };
        let v = t[pos] + 1;
        for x in &mut t[pos..] {
            *x = v;
        }
    }
}

/// All ordered tuples of length `n` over `0..d` in lexicographic order.
pub fn all_tuples(d: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if d == 0 && n > 0 { 0 } else { d.pow(n as u32) };
    (0..total).map(move |mut flat| {
        let mut t = vec![0; n];
        for slot in (0..n).rev() {
            t[slot] = flat % d;
            flat /= d;
        }
        t
    })
}

type SparseVec = Vec<(usize, Scalar)>;

pub struct NHomAlgebra {
    arity: usize,
    parity: Vec<Parity>,
    table: BTreeMap<Vec<usize>, Vec<Scalar>>,
    alpha: Mat,
    // Bracket on every ordered basis tuple, indexed by the tuple read in base `dim`.
    tensor: Vec<SparseVec>,
    alpha_powers: RwLock<Vec<Mat>>,
}

impl Clone for NHomAlgebra {
    fn clone(&self) -> Self {
        NHomAlgebra {
            arity: self.arity,
            parity: self.parity.clone(),
            table: self.table.clone(),
            alpha: self.alpha.clone(),
            tensor: self.tensor.clone(),
            alpha_powers: RwLock::new(self.alpha_powers.read().expect("poisoned").clone()),
        }
    }
}

impl PartialEq for NHomAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.parity == other.parity && self.table == other.table && self.alpha == other.alpha
    }
}

impl Eq for NHomAlgebra {}

impl fmt::Debug for NHomAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NHomAlgebra")
            .field("arity", &self.arity)
            .field("parity", &self.parity)
            .field("table", &self.table)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl NHomAlgebra {
    /// Builds an algebra from canonical-tuple structure constants.
    ///
    /// Only the shape of the data is checked here; the axioms are left to
    /// [`NHomAlgebra::validate`] so that broken inputs can still be inspected.
    /// Zero values are dropped from the table.
    pub fn new(
        arity: usize,
        parity: Vec<Parity>,
        brackets: impl IntoIterator<Item = (Vec<usize>, Vec<Scalar>)>,
        alpha: Mat,
    ) -> Result<Self, AlgebraError> {
        if arity < 2 {
            return Err(AlgebraError::ArityTooSmall(arity));
        }
        let dim = parity.len();
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(AlgebraError::AlphaShape {
                dim,
                rows: alpha.rows(),
                cols: alpha.cols(),
            });
        }
        let mut table = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (tuple, value) in brackets {
            if tuple.len() != arity {
                return Err(AlgebraError::TupleLength {
                    len: tuple.len(),
                    tuple,
                    arity,
                });
            }
            if let Some(&index) = tuple.iter().find(|&&i| i >= dim) {
                return Err(AlgebraError::IndexOutOfRange { index, dim });
            }
            if tuple.windows(2).any(|w| w[0] > w[1]) {
                return Err(AlgebraError::NotWeaklyIncreasing(tuple));
            }
            if value.len() != dim {
                return Err(AlgebraError::ValueLength {
                    len: value.len(),
                    tuple,
                    dim,
                });
            }
            if !seen.insert(tuple.clone()) {
                return Err(AlgebraError::DuplicateTuple(tuple));
            }
            if !is_zero_vec(&value) {
                table.insert(tuple, value);
            }
        }
        let tensor = build_tensor(arity, &parity, &table);
        Ok(NHomAlgebra {
            arity,
            parity,
            table,
            alpha,
            tensor,
            alpha_powers: RwLock::new(Vec::new()),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn alpha(&self) -> &Mat {
        &self.alpha
    }

    /// Nonzero structure constants on canonical tuples.
    pub fn table(&self) -> &BTreeMap<Vec<usize>, Vec<Scalar>> {
        &self.table
    }

    /// Indices of basis vectors with parity `p`.
    pub fn indices_of(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == p).collect()
    }

    pub fn homogeneous_part(&self, p: Parity) -> SubspaceBasis {
        SubspaceBasis::coordinate(self.dim(), self.indices_of(p))
    }

    fn flat_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * self.dim() + i)
    }

    /// Bracket of basis vectors, as a sparse vector.
    pub fn basis_bracket(&self, tuple: &[usize]) -> &[(usize, Scalar)] {
        &self.tensor[self.flat_index(tuple)]
    }

    pub fn basis_bracket_dense(&self, tuple: &[usize]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (j, c) in self.basis_bracket(tuple) {
            v[*j] = c.clone();
        }
        v
    }

    pub fn bracket(&self, args: &[&[Scalar]]) -> Result<Vec<Scalar>, AlgebraError> {
        if args.len() != self.arity {
            return Err(AlgebraError::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.dim()) {
            return Err(AlgebraError::ArgumentLength {
                expected: self.dim(),
                found: a.len(),
            });
        }
        let mut out = vec![Scalar::zero(); self.dim()];
        self.bracket_into(args, &Scalar::one(), &mut out);
        Ok(out)
    }

    /// `out += scale * [args]`; argument shapes are the caller's responsibility.
    pub(crate) fn bracket_into(&self, args: &[&[Scalar]], scale: &Scalar, out: &mut [Scalar]) {
        let support: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if support.iter().any(Vec::is_empty) || scale.is_zero() {
            return;
        }
        let n = args.len();
        let mut pos = vec![0usize; n];
        let mut tuple = vec![0usize; n];
        loop {
            for s in 0..n {
                tuple[s] = support[s][pos[s]];
            }
            let value = &self.tensor[self.flat_index(&tuple)];
            if !value.is_empty() {
                let mut coef = scale.clone();
                for s in 0..n {
                    coef *= &args[s][tuple[s]];
                }
                for (j, c) in value {
                    out[*j] += &coef * c;
                }
            }
            let mut s = n;
            loop {
                if s == 0 {
                    return;
                }
                s -= 1;
                pos[s] += 1;
                if pos[s] < support[s].len() {
                    break;
                }
                pos[s] = 0;
            }
        }
    }

    /// `alpha^k`, memoized per exponent.
    pub fn alpha_power(&self, k: usize) -> Mat {
        if let Some(m) = self.alpha_powers.read().expect("poisoned").get(k) {
            return m.clone();
        }
        let mut powers = self.alpha_powers.write().expect("poisoned");
        if powers.is_empty() {
            powers.push(Mat::identity(self.dim()));
        }
        while powers.len() <= k {
            let next = &self.alpha * powers.last().expect("nonempty");
            powers.push(next);
        }
        powers[k].clone()
    }

    pub fn is_alpha_surjective(&self) -> bool {
        self.alpha.rank() == self.dim()
    }

    /// Z(N), split by parity.
    pub fn center(&self) -> (SubspaceBasis, SubspaceBasis) {
        let d = self.dim();
        let n = self.arity;
        let split = |p: Parity| {
            let idx = self.indices_of(p);
            let mut rows = Vec::new();
            for rest in all_tuples(d, n - 1) {
                let mut tuple = Vec::with_capacity(n);
                for c in 0..d {
                    let row: Vec<Scalar> = idx
                        .iter()
                        .map(|&i| {
                            tuple.clear();
                            tuple.push(i);
                            tuple.extend_from_slice(&rest);
                            self.basis_bracket(&tuple)
                                .iter()
                                .find(|(j, _)| *j == c)
                                .map_or_else(Scalar::zero, |(_, v)| v.clone())
                        })
                        .collect();
                    if !is_zero_vec(&row) {
                        rows.push(row);
                    }
                }
            }
            let m = if rows.is_empty() {
                Mat::zeros(0, idx.len())
            } else {
                Mat::from_rows(rows).expect("uniform rows")
            };
            embed(d, &idx, nullspace(&m))
        };
        (split(Parity::Even), split(Parity::Odd))
    }

    /// Span of all brackets `[N, ..., N]`, split by parity.
    pub fn derived_subspace(&self) -> (SubspaceBasis, SubspaceBasis) {
        let d = self.dim();
        let split = |p: Parity| {
            let vecs = self
                .tensor
                .iter()
                .filter(|v| !v.is_empty())
                .map(|v| {
                    let mut out = vec![Scalar::zero(); d];
                    for (j, c) in v {
                        if self.parity[*j] == p {
                            out[*j] = c.clone();
                        }
                    }
                    out
                })
                .collect();
            SubspaceBasis::from_spanning(d, vecs).expect("lengths match")
        };
        (split(Parity::Even), split(Parity::Odd))
    }

    /// First degree-law violation in the stored table, if any.
    pub fn check_degree_law(&self) -> Result<(), AlgebraError> {
        for (tuple, value) in &self.table {
            let expected = Parity::sum(tuple.iter().map(|&i| &self.parity[i]));
            if let Some(index) = (0..self.dim()).find(|&j| !value[j].is_zero() && self.parity[j] != expected) {
                return Err(AlgebraError::DegreeLaw {
                    tuple: tuple.clone(),
                    index,
                });
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let d = self.dim();
        let n = self.arity;

        // Stored table: a repeated even index must carry the zero vector.
        for (tuple, value) in &self.table {
            if tuple.windows(2).any(|w| w[0] == w[1] && !self.parity[w[0]].is_odd()) {
                report.record(Axiom::SkewSymmetry, tuple.clone(), value.clone());
            }
        }
        // Adjacent transpositions of every ordered basis tuple.
        for t in all_tuples(d, n) {
            let base = self.basis_bracket_dense(&t);
            for i in 0..n - 1 {
                let mut s = t.clone();
                s.swap(i, i + 1);
                let swapped = self.basis_bracket_dense(&s);
                // [.., x_i, x_{i+1}, ..] + (-1)^{|x_i||x_{i+1}|} [.., x_{i+1}, x_i, ..] = 0
                let sign = int((self.parity[t[i]] * self.parity[t[i + 1]]).sign());
                let mut residual = base.clone();
                axpy(&mut residual, &sign, &swapped);
                if !is_zero_vec(&residual) {
                    report.record(Axiom::SkewSymmetry, t.clone(), residual);
                }
            }
        }

        // alpha is even.
        for r in 0..d {
            for c in 0..d {
                if self.parity[r] != self.parity[c] && !self.alpha.get(r, c).is_zero() {
                    report.record(Axiom::EvenAlpha, vec![r, c], vec![self.alpha.get(r, c).clone()]);
                }
            }
        }

        // Degree law on the stored table.
        for (tuple, value) in &self.table {
            let expected = Parity::sum(tuple.iter().map(|&i| &self.parity[i]));
            if (0..d).any(|j| !value[j].is_zero() && self.parity[j] != expected) {
                report.record(Axiom::DegreeLaw, tuple.clone(), value.clone());
            }
        }

        let alpha_cols: Vec<Vec<Scalar>> = (0..d).map(|i| self.alpha.col(i)).collect();

        // alpha([e_t]) = [alpha e_t1, ..., alpha e_tn]
        for t in all_tuples(d, n) {
            let mut residual = self.alpha.mul_vec(&self.basis_bracket_dense(&t));
            let args: Vec<&[Scalar]> = t.iter().map(|&i| alpha_cols[i].as_slice()).collect();
            self.bracket_into(&args, &-Scalar::one(), &mut residual);
            if !is_zero_vec(&residual) {
                report.record(Axiom::Multiplicativity, t, residual);
            }
        }

        // Hom-Jacobi over all (x_1..x_{n-1}; y_1..y_n).
        for x in all_tuples(d, n - 1) {
            let px = Parity::sum(x.iter().map(|&i| &self.parity[i]));
            for y in all_tuples(d, n) {
                let mut residual = vec![Scalar::zero(); d];
                let inner = self.basis_bracket_dense(&y);
                {
                    let mut args: Vec<&[Scalar]> = x.iter().map(|&i| alpha_cols[i].as_slice()).collect();
                    args.push(&inner);
                    self.bracket_into(&args, &Scalar::one(), &mut residual);
                }
                let mut py_prefix = Parity::Even;
                for i in 0..n {
                    let mut xt = x.clone();
                    xt.push(y[i]);
                    let moved = self.basis_bracket_dense(&xt);
                    let args: Vec<&[Scalar]> = (0..n)
                        .map(|j| if j == i { moved.as_slice() } else { alpha_cols[y[j]].as_slice() })
                        .collect();
                    let sign = int(-(px * py_prefix).sign());
                    self.bracket_into(&args, &sign, &mut residual);
                    py_prefix = py_prefix + self.parity[y[i]];
                }
                if !is_zero_vec(&residual) {
                    let mut witness = x.clone();
                    witness.extend_from_slice(&y);
                    report.record(Axiom::HomJacobi, witness, residual);
                }
            }
        }
        report
    }

    /// The same algebra written in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Mat) -> Result<NHomAlgebra, AlgebraError> {
        let d = self.dim();
        let bad = || AlgebraError::BadBasisChange(d);
        if p.rows() != d || p.cols() != d {
            return Err(bad());
        }
        for r in 0..d {
            for c in 0..d {
                if self.parity[r] != self.parity[c] && !p.get(r, c).is_zero() {
                    return Err(bad());
                }
            }
        }
        let inv = p.inverse().ok_or_else(bad)?;
        let cols: Vec<Vec<Scalar>> = (0..d).map(|i| p.col(i)).collect();
        let mut brackets = Vec::new();
        for t in weakly_increasing_tuples(d, self.arity) {
            if t.windows(2).any(|w| w[0] == w[1] && !self.parity[w[0]].is_odd()) {
                continue;
            }
            let args: Vec<&[Scalar]> = t.iter().map(|&i| cols[i].as_slice()).collect();
            let mut v = vec![Scalar::zero(); d];
            self.bracket_into(&args, &Scalar::one(), &mut v);
            brackets.push((t, inv.mul_vec(&v)));
        }
        let alpha = &(&inv * &self.alpha) * p;
        NHomAlgebra::new(self.arity, self.parity.clone(), brackets, alpha)
    }
}

fn build_tensor(arity: usize, parity: &[Parity], table: &BTreeMap<Vec<usize>, Vec<Scalar>>) -> Vec<SparseVec> {
    let d = parity.len();
    all_tuples(d, arity)
        .map(|t| {
            let (canon, sign) = canonicalize_tuple(&t, parity).expect("indices in range");
            match (sign, table.get(&canon)) {
                (0, _) | (_, None) => Vec::new(),
                (s, Some(v)) => v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, if s < 0 { -c.clone() } else { c.clone() }))
                    .collect(),
            }
        })
        .collect()
}

/// Lifts a subspace of the coordinates `idx` into `F^d`.
fn embed(d: usize, idx: &[usize], sub: SubspaceBasis) -> SubspaceBasis {
    let vecs = sub
        .into_vectors()
        .into_iter()
        .map(|v| {
            let mut out = vec![Scalar::zero(); d];
            for (k, &i) in idx.iter().enumerate() {
                out[i] = v[k].clone();
            }
            out
        })
        .collect();
    SubspaceBasis::from_spanning(d, vecs).expect("lengths match")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    SkewSymmetry,
    HomJacobi,
    Multiplicativity,
    EvenAlpha,
    DegreeLaw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    #[serde(serialize_with = "crate::report::ser_scalars")]
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub skew_ok: bool,
    pub jacobi_ok: bool,
    pub multiplicative_ok: bool,
    pub even_alpha_ok: bool,
    pub degree_ok: bool,
    /// At most [`MAX_WITNESSES_PER_AXIOM`] entries per axiom.
    pub failures: Vec<AxiomFailure>,
}

impl Default for ValidationReport {
    fn default() -> Self {
        ValidationReport {
            skew_ok: true,
            jacobi_ok: true,
            multiplicative_ok: true,
            even_alpha_ok: true,
            degree_ok: true,
            failures: Vec::new(),
        }
    }
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, axiom: Axiom, witness: Vec<usize>, residual: Vec<Scalar>) {
        let flag = match axiom {
            Axiom::SkewSymmetry => &mut self.skew_ok,
            Axiom::HomJacobi => &mut self.jacobi_ok,
            Axiom::Multiplicativity => &mut self.multiplicative_ok,
            Axiom::EvenAlpha => &mut self.even_alpha_ok,
            Axiom::DegreeLaw => &mut self.degree_ok,
        };
        *flag = false;
        if self.failures.iter().filter(|f| f.axiom == axiom).count() < MAX_WITNESSES_PER_AXIOM {
            self.failures.push(AxiomFailure {
                axiom,
                witness,
                residual,
            });
        }
    }
}
