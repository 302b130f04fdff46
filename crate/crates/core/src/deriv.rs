//! Generalized derivation spaces as solutions of linear systems.
//!
//! A homogeneous endomorphism `D` of degree `xi` is encoded by its entries
//! that map `N_g` into `N_{g+xi}`. For every kind of space the defining
//! identity is imposed on all ordered basis tuples, together with `D alpha =
//! alpha D` for `D` and each witness map. Spaces with witnesses (QDer, GDer)
//! are projections of the joint solution onto the `D` block.
//!
//! [`in_space`] re-checks membership by evaluating the identity with the
//! bracket; it never looks at the constraint matrices built here.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{all_tuples, NHomAlgebra};
use crate::linalg::{frac, int, is_zero_vec, kernel_from_rref, Mat, RowReducer, Scalar, SubspaceBasis};
use crate::parity::Parity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error("map does not commute with alpha")]
    NotAlphaCommuting,
    #[error("map is not homogeneous of degree {0}")]
    NotHomogeneous(Parity),
    #[error("map has shape {rows}x{cols}, expected {dim}x{dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
    #[error("unknown space kind {0:?}")]
    UnknownKind(String),
}

/// The spaces that can be solved for.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    Omega,
    Der,
    ZDer,
    C,
    QC,
    QDer,
    GDer,
}

impl Kind {
    pub const ALL: [Kind; 7] = [Kind::Omega, Kind::Der, Kind::ZDer, Kind::C, Kind::QC, Kind::QDer, Kind::GDer];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Omega => "Omega",
            Kind::Der => "Der",
            Kind::ZDer => "ZDer",
            Kind::C => "C",
            Kind::QC => "QC",
            Kind::QDer => "QDer",
            Kind::GDer => "GDer",
        }
    }

    /// Number of witness maps carried next to `D` for an algebra of the given arity.
    pub fn witness_count(self, arity: usize) -> usize {
        match self {
            Kind::QDer => 1,
            Kind::GDer => arity,
            _ => 0,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = DerivError;

    fn from_str(s: &str) -> Result<Kind, DerivError> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| DerivError::UnknownKind(s.to_string()))
    }
}

/// A linear map of `N` with a declared degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedEndo {
    mat: Mat,
    xi: Parity,
}

impl GradedEndo {
    pub fn new(mat: Mat, xi: Parity) -> Self {
        GradedEndo { mat, xi }
    }

    /// Like [`GradedEndo::new`] but rejects maps that are not of degree `xi`.
    pub fn homogeneous(mat: Mat, xi: Parity, parity: &[Parity]) -> Result<Self, DerivError> {
        let e = GradedEndo::new(mat, xi);
        if e.mat.rows() != parity.len() || e.mat.cols() != parity.len() {
            return Err(DerivError::Shape {
                rows: e.mat.rows(),
                cols: e.mat.cols(),
                dim: parity.len(),
            });
        }
        if !e.is_homogeneous(parity) {
            return Err(DerivError::NotHomogeneous(xi));
        }
        Ok(e)
    }

    pub fn zero(d: usize, xi: Parity) -> Self {
        GradedEndo::new(Mat::zeros(d, d), xi)
    }

    pub fn identity(d: usize) -> Self {
        GradedEndo::new(Mat::identity(d), Parity::Even)
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn xi(&self) -> Parity {
        self.xi
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn is_homogeneous(&self, parity: &[Parity]) -> bool {
        let d = parity.len();
        (0..d).all(|r| (0..d).all(|c| parity[r] == parity[c] + self.xi || self.mat.get(r, c).is_zero()))
    }

    pub fn compose(&self, other: &GradedEndo) -> GradedEndo {
        GradedEndo::new(&self.mat * &other.mat, self.xi + other.xi)
    }

    pub fn scale(&self, s: &Scalar) -> GradedEndo {
        GradedEndo::new(self.mat.scale(s), self.xi)
    }

    /// Sum of two maps of the same degree.
    pub fn add(&self, other: &GradedEndo) -> GradedEndo {
        assert_eq!(self.xi, other.xi, "adding maps of different degree");
        GradedEndo::new(&self.mat + &other.mat, self.xi)
    }

    pub fn sub(&self, other: &GradedEndo) -> GradedEndo {
        assert_eq!(self.xi, other.xi, "subtracting maps of different degree");
        GradedEndo::new(&self.mat - &other.mat, self.xi)
    }

    /// Column-major entries, the coordinates used by [`EndoSubspace::as_subspace`].
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.mat.to_col_major()
    }
}

/// `D E - (-1)^{|D||E|} E D`
pub fn supercommutator(d: &GradedEndo, e: &GradedEndo) -> GradedEndo {
    let de = &d.mat * &e.mat;
    let ed = &e.mat * &d.mat;
    let mat = if (d.xi * e.xi).is_odd() { &de + &ed } else { &de - &ed };
    GradedEndo::new(mat, d.xi + e.xi)
}

/// `(D E + (-1)^{|D||E|} E D) / 2`
pub fn jordan_product(d: &GradedEndo, e: &GradedEndo) -> GradedEndo {
    let de = &d.mat * &e.mat;
    let ed = &e.mat * &d.mat;
    let sum = if (d.xi * e.xi).is_odd() { &de - &ed } else { &de + &ed };
    GradedEndo::new(sum.scale(&frac(1, 2)), d.xi + e.xi)
}

pub fn commutes_with_alpha(alg: &NHomAlgebra, m: &Mat) -> bool {
    m * alg.alpha() == alg.alpha() * m
}

/// `D alpha`, defined for maps commuting with alpha.
pub fn alpha_twist(alg: &NHomAlgebra, d: &GradedEndo) -> Result<GradedEndo, DerivError> {
    if !commutes_with_alpha(alg, &d.mat) {
        return Err(DerivError::NotAlphaCommuting);
    }
    Ok(GradedEndo::new(&d.mat * alg.alpha(), d.xi))
}

/// `(D . E) . twist(F) - twist(D) . (E . F)` for the Jordan product `.`.
pub fn hom_associator(
    alg: &NHomAlgebra,
    d: &GradedEndo,
    e: &GradedEndo,
    f: &GradedEndo,
) -> Result<GradedEndo, DerivError> {
    let tf = alpha_twist(alg, f)?;
    let td = alpha_twist(alg, d)?;
    if !commutes_with_alpha(alg, &e.mat) {
        return Err(DerivError::NotAlphaCommuting);
    }
    let left = jordan_product(&jordan_product(d, e), &tf);
    let right = jordan_product(&td, &jordan_product(e, f));
    Ok(GradedEndo::new(&left.mat - &right.mat, left.xi))
}

/// A solved space: the canonical basis of its `D` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSubspace {
    pub kind: Kind,
    pub k: usize,
    pub xi: Parity,
    pub basis: Vec<GradedEndo>,
    /// For QDer `[D']`, for GDer `[D^(1), ..., D^(n)]`; aligned with `basis`, empty otherwise.
    pub witnesses: Vec<Vec<Mat>>,
    ambient: SubspaceBasis,
}

impl EndoSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The span as a subspace of `F^{d*d}` in column-major coordinates.
    pub fn as_subspace(&self) -> &SubspaceBasis {
        &self.ambient
    }

    /// Exact span membership; maps of the other degree are members only if zero.
    pub fn contains(&self, d: &GradedEndo) -> bool {
        if d.is_zero() {
            return true;
        }
        d.xi == self.xi && self.ambient.contains(&d.to_vec()).expect("same ambient dimension")
    }
}

/// Positions of the entries a degree-`xi` map may have, column-major.
struct Layout {
    d: usize,
    entries: Vec<(usize, usize)>,
    index: Vec<Vec<Option<usize>>>,
}

impl Layout {
    fn new(parity: &[Parity], xi: Parity) -> Layout {
        let d = parity.len();
        let mut entries = Vec::new();
        let mut index = vec![vec![None; d]; d];
        for c in 0..d {
            for r in 0..d {
                if parity[r] == parity[c] + xi {
                    index[r][c] = Some(entries.len());
                    entries.push((r, c));
                }
            }
        }
        Layout { d, entries, index }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    fn to_mat(&self, coords: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.d, self.d);
        for (v, &(r, c)) in coords.iter().zip(&self.entries) {
            m.set(r, c, v.clone());
        }
        m
    }
}

#[derive(Copy, Clone)]
enum Term {
    /// `±[a^k x_1, ..., U_block(x_slot), ..., a^k x_n]`, optionally with the
    /// graded sign `(-1)^{xi |X_{slot-1}|}`.
    Slot { block: usize, slot: usize, graded: bool, negate: bool },
    /// `±U_block([x_1, ..., x_n])`
    Rhs { block: usize, negate: bool },
}

fn slot(block: usize, slot: usize, graded: bool, negate: bool) -> Term {
    Term::Slot {
        block,
        slot,
        graded,
        negate,
    }
}

/// Block count and the vector equations (each `= 0` per tuple) for a kind.
fn equations(kind: Kind, n: usize) -> (usize, Vec<Vec<Term>>) {
    let rhs = |block, negate| Term::Rhs { block, negate };
    match kind {
        Kind::Omega => (1, vec![]),
        Kind::Der => {
            let mut eq: Vec<Term> = (0..n).map(|j| slot(0, j, true, false)).collect();
            eq.push(rhs(0, true));
            (1, vec![eq])
        }
        Kind::ZDer => (1, vec![vec![slot(0, 0, false, false)], vec![rhs(0, false)]]),
        Kind::C => (1, (0..n).map(|j| vec![slot(0, j, true, false), rhs(0, true)]).collect()),
        Kind::QC => (
            1,
            (1..n).map(|j| vec![slot(0, 0, false, false), slot(0, j, true, true)]).collect(),
        ),
        Kind::QDer => {
            let mut eq: Vec<Term> = (0..n).map(|j| slot(0, j, true, false)).collect();
            eq.push(rhs(1, true));
            (2, vec![eq])
        }
        Kind::GDer => {
            let mut eq = vec![slot(0, 0, false, false)];
            eq.extend((1..n).map(|j| slot(j, j, true, false)));
            eq.push(rhs(n, true));
            (n + 1, vec![eq])
        }
    }
}

/// Assembles and row-reduces the system. Columns hold the witness blocks first
/// and the `D` block last, so rows whose pivot lies in the `D` block are exactly
/// the constraints on `D` alone.
fn reduce_system(alg: &NHomAlgebra, k: usize, xi: Parity, blocks: usize, eqs: &[Vec<Term>], layout: &Layout) -> Vec<(usize, Vec<Scalar>)> {
    let d = alg.dim();
    let n = alg.arity();
    let m = layout.len();
    let total = blocks * m;
    let col = |block: usize, r: usize, c: usize| -> Option<usize> {
        let e = layout.index[r][c]?;
        let b = if block == 0 { blocks - 1 } else { block - 1 };
        Some(b * m + e)
    };
    let mut red = RowReducer::new(total);
    if total == 0 {
        return red.into_rref();
    }

    // U alpha - alpha U = 0 for every block.
    let alpha = alg.alpha();
    for block in 0..blocks {
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![Scalar::zero(); total];
                for t in 0..d {
                    if let Some(j) = col(block, r, t) {
                        row[j] += alpha.get(t, c);
                    }
                    if let Some(j) = col(block, t, c) {
                        row[j] -= alpha.get(r, t);
                    }
                }
                if !is_zero_vec(&row) {
                    red.push(row);
                }
            }
        }
    }

    let ak = alg.alpha_power(k);
    let ak_cols: Vec<Vec<Scalar>> = (0..d).map(|i| ak.col(i)).collect();
    let units: Vec<Vec<Scalar>> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
    let one = Scalar::one();
    let minus_one = -Scalar::one();

    for tuple in all_tuples(d, n) {
        if red.is_full() {
            break;
        }
        let value = alg.basis_bracket_dense(&tuple);
        let mut prefix = Vec::with_capacity(n);
        let mut acc = Parity::Even;
        for &i in &tuple {
            prefix.push(acc);
            acc = acc + alg.parity()[i];
        }
        for eq in eqs {
            let mut rows = vec![vec![Scalar::zero(); total]; d];
            for term in eq {
                match *term {
                    Term::Slot {
                        block,
                        slot,
                        graded,
                        negate,
                    } => {
                        let mut sign_odd = negate;
                        if graded && (xi * prefix[slot]).is_odd() {
                            sign_odd = !sign_odd;
                        }
                        let scale = if sign_odd { &minus_one } else { &one };
                        let c = tuple[slot];
                        for (a, unit) in units.iter().enumerate() {
                            let Some(j) = col(block, a, c) else { continue };
                            let args: Vec<&[Scalar]> = (0..n)
                                .map(|s| if s == slot { unit.as_slice() } else { ak_cols[tuple[s]].as_slice() })
                                .collect();
                            let mut w = vec![Scalar::zero(); d];
                            alg.bracket_into(&args, scale, &mut w);
                            for (out, v) in w.into_iter().enumerate() {
                                if !v.is_zero() {
                                    rows[out][j] += v;
                                }
                            }
                        }
                    }
                    Term::Rhs { block, negate } => {
                        for (b, v) in value.iter().enumerate() {
                            if v.is_zero() {
                                continue;
                            }
                            for (a, row) in rows.iter_mut().enumerate() {
                                if let Some(j) = col(block, a, b) {
                                    if negate {
                                        row[j] -= v;
                                    } else {
                                        row[j] += v;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for row in rows {
                if !is_zero_vec(&row) {
                    red.push(row);
                }
            }
        }
    }
    red.into_rref()
}

/// Solves for the degree-`xi` part of the space `kind` at level `alpha^k`.
pub fn solve(alg: &NHomAlgebra, kind: Kind, k: usize, xi: Parity) -> EndoSubspace {
    let layout = Layout::new(alg.parity(), xi);
    let (blocks, eqs) = equations(kind, alg.arity());
    let m = layout.len();
    let rows = reduce_system(alg, k, xi, blocks, &eqs, &layout);
    let d_offset = (blocks - 1) * m;

    // Constraints on D alone, restricted to the D columns.
    let d_rows: Vec<(usize, Vec<Scalar>)> = rows
        .iter()
        .filter(|(p, _)| *p >= d_offset)
        .map(|(p, row)| (p - d_offset, row[d_offset..].to_vec()))
        .collect();
    let kernel = kernel_from_rref(m, &d_rows);
    let coords = SubspaceBasis::from_spanning(m, kernel).expect("lengths match");

    let witness_rows: Vec<&(usize, Vec<Scalar>)> = rows.iter().filter(|(p, _)| *p < d_offset).collect();
    let mut basis = Vec::with_capacity(coords.dim());
    let mut witnesses = Vec::new();
    for x in coords.vectors() {
        basis.push(GradedEndo::new(layout.to_mat(x), xi));
        if blocks > 1 {
            // Free witness entries are set to zero; pivots are read off the reduced rows.
            let mut w = vec![Scalar::zero(); d_offset];
            for (p, row) in &witness_rows {
                let mut s = Scalar::zero();
                for (j, xj) in x.iter().enumerate() {
                    let coef = &row[d_offset + j];
                    if !coef.is_zero() && !xj.is_zero() {
                        s -= coef * xj;
                    }
                }
                w[*p] = s;
            }
            witnesses.push((0..blocks - 1).map(|b| layout.to_mat(&w[b * m..(b + 1) * m])).collect());
        }
    }
    let d = alg.dim();
    let ambient = SubspaceBasis::from_spanning(d * d, basis.iter().map(GradedEndo::to_vec).collect())
        .expect("lengths match");
    EndoSubspace {
        kind,
        k,
        xi,
        basis,
        witnesses,
        ambient,
    }
}

/// The commutant `{u : u alpha = alpha u}` of degree `xi`.
pub fn omega(alg: &NHomAlgebra, xi: Parity) -> EndoSubspace {
    solve(alg, Kind::Omega, 0, xi)
}

/// Degree-`xi` maps commuting with alpha that vanish on `[N, ..., N]`.
///
/// These are exactly the maps that can be added to a quasiderivation witness
/// without changing anything.
pub fn witness_kernel(alg: &NHomAlgebra, xi: Parity) -> Vec<Mat> {
    let layout = Layout::new(alg.parity(), xi);
    let eqs = vec![vec![Term::Rhs { block: 0, negate: false }]];
    let rows = reduce_system(alg, 0, xi, 1, &eqs, &layout);
    let kernel = kernel_from_rref(layout.len(), &rows);
    SubspaceBasis::from_spanning(layout.len(), kernel)
        .expect("lengths match")
        .vectors()
        .iter()
        .map(|v| layout.to_mat(v))
        .collect()
}

/// Residual of the defining identity of `kind`, evaluated with the bracket on
/// every ordered basis tuple. `maps` is `[D]`, `[D, D']` or `[D, D^(1), ..., D^(n)]`.
fn residual(alg: &NHomAlgebra, kind: Kind, k: usize, xi: Parity, maps: &[&Mat]) -> Vec<Scalar> {
    let d = alg.dim();
    let n = alg.arity();
    let ak = alg.alpha_power(k);
    let twisted: Vec<Vec<Scalar>> = (0..d).map(|i| ak.col(i)).collect();
    let map_cols: Vec<Vec<Vec<Scalar>>> = maps.iter().map(|m| (0..d).map(|i| m.col(i)).collect()).collect();
    let mut out = Vec::new();

    // sign * [a^k x_1, ..., M(x_slot), ..., a^k x_n]
    let insert = |tuple: &[usize], slot: usize, which: usize| -> Vec<Scalar> {
        let args: Vec<&[Scalar]> = (0..n)
            .map(|s| {
                if s == slot {
                    map_cols[which][tuple[s]].as_slice()
                } else {
                    twisted[tuple[s]].as_slice()
                }
            })
            .collect();
        alg.bracket(&args).expect("shapes match")
    };
    let graded = |tuple: &[usize], slot: usize| -> Scalar {
        let px = Parity::sum(tuple[..slot].iter().map(|&i| &alg.parity()[i]));
        int((xi * px).sign())
    };
    let sub = |a: &mut Vec<Scalar>, b: &[Scalar]| {
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
    };
    let add_scaled = |a: &mut Vec<Scalar>, s: &Scalar, b: &[Scalar]| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += s * y;
        }
    };

    for tuple in all_tuples(d, n) {
        let value = alg.basis_bracket_dense(&tuple);
        match kind {
            Kind::Omega => {}
            Kind::Der | Kind::QDer => {
                let mut lhs = vec![Scalar::zero(); d];
                for j in 0..n {
                    add_scaled(&mut lhs, &graded(&tuple, j), &insert(&tuple, j, 0));
                }
                let rhs_map = if kind == Kind::Der { maps[0] } else { maps[1] };
                sub(&mut lhs, &rhs_map.mul_vec(&value));
                out.extend(lhs);
            }
            Kind::ZDer => {
                out.extend(insert(&tuple, 0, 0));
                out.extend(maps[0].mul_vec(&value));
            }
            Kind::C => {
                let dv = maps[0].mul_vec(&value);
                for j in 0..n {
                    let mut r = vec![Scalar::zero(); d];
                    add_scaled(&mut r, &graded(&tuple, j), &insert(&tuple, j, 0));
                    sub(&mut r, &dv);
                    out.extend(r);
                }
            }
            Kind::QC => {
                let first = insert(&tuple, 0, 0);
                for j in 1..n {
                    let mut r = first.clone();
                    let other: Vec<Scalar> = insert(&tuple, j, 0).iter().map(|v| v * graded(&tuple, j)).collect();
                    sub(&mut r, &other);
                    out.extend(r);
                }
            }
            Kind::GDer => {
                let mut lhs = insert(&tuple, 0, 0);
                for j in 1..n {
                    add_scaled(&mut lhs, &graded(&tuple, j), &insert(&tuple, j, j));
                }
                sub(&mut lhs, &maps[n].mul_vec(&value));
                out.extend(lhs);
            }
        }
    }
    out
}

/// Residual of `kind` for `D` and witness maps, followed by the commutation
/// residuals `W alpha - alpha W` of the witnesses.
fn witness_residual(alg: &NHomAlgebra, kind: Kind, k: usize, xi: Parity, d_map: &Mat, ws: &[Mat]) -> Vec<Scalar> {
    let mut maps: Vec<&Mat> = vec![d_map];
    maps.extend(ws.iter());
    let mut r = residual(alg, kind, k, xi, &maps);
    for w in ws {
        r.extend((&(w * alg.alpha()) - &(alg.alpha() * w)).to_col_major());
    }
    r
}

/// Residuals of each witness entry on its own: the columns of the linear
/// system the witnesses must solve.
fn witness_columns(alg: &NHomAlgebra, kind: Kind, k: usize, xi: Parity, layout: &Layout) -> Vec<Vec<Scalar>> {
    let dim = alg.dim();
    let count = kind.witness_count(alg.arity());
    let zero = Mat::zeros(dim, dim);
    let mut columns = Vec::with_capacity(count * layout.len());
    for b in 0..count {
        for &(r, c) in &layout.entries {
            let mut ws = vec![zero.clone(); count];
            ws[b].set(r, c, Scalar::one());
            columns.push(witness_residual(alg, kind, k, xi, &zero, &ws));
        }
    }
    columns
}

fn admissible(alg: &NHomAlgebra, d_map: &GradedEndo) -> bool {
    d_map.dim() == alg.dim() && d_map.is_homogeneous(alg.parity()) && commutes_with_alpha(alg, d_map.mat())
}

/// Witness maps making `D` a member of a QDer/GDer space, found by solving
/// the residual system entry by entry. Returns `None` when no witness exists
/// or `D` itself is not admissible (wrong degree, not commuting with alpha).
pub fn find_witnesses(alg: &NHomAlgebra, kind: Kind, k: usize, d_map: &GradedEndo) -> Option<Vec<Mat>> {
    if !admissible(alg, d_map) {
        return None;
    }
    let xi = d_map.xi();
    let count = kind.witness_count(alg.arity());
    let layout = Layout::new(alg.parity(), xi);
    let m = layout.len();
    let zeros = vec![Mat::zeros(alg.dim(), alg.dim()); count];
    let base = witness_residual(alg, kind, k, xi, d_map.mat(), &zeros);
    let columns = witness_columns(alg, kind, k, xi, &layout);

    // Solve columns * w = -base.
    let unknowns = columns.len();
    let mut red = RowReducer::new(unknowns + 1);
    for (i, b) in base.iter().enumerate() {
        let mut row: Vec<Scalar> = columns.iter().map(|c| c[i].clone()).collect();
        row.push(-b.clone());
        if !is_zero_vec(&row) {
            red.push(row);
        }
    }
    let reduced = red.into_rref();
    if reduced.iter().any(|(p, _)| *p == unknowns) {
        return None;
    }
    let mut w = vec![Scalar::zero(); unknowns];
    for (p, row) in &reduced {
        w[*p] = row[unknowns].clone();
    }
    Some((0..count).map(|b| layout.to_mat(&w[b * m..(b + 1) * m])).collect())
}

/// Membership by definition for one `(kind, k, xi)`, reusable across many maps.
///
/// The identity is evaluated with the bracket on all basis tuples. For kinds
/// with witnesses, `D` is a member iff its residual lies in the span of the
/// residuals of single witness entries.
pub struct Membership<'a> {
    alg: &'a NHomAlgebra,
    kind: Kind,
    k: usize,
    xi: Parity,
    witness_span: Option<SubspaceBasis>,
}

impl<'a> Membership<'a> {
    pub fn new(alg: &'a NHomAlgebra, kind: Kind, k: usize, xi: Parity) -> Self {
        let count = kind.witness_count(alg.arity());
        let witness_span = (count > 0).then(|| {
            let layout = Layout::new(alg.parity(), xi);
            let zero = Mat::zeros(alg.dim(), alg.dim());
            let len = witness_residual(alg, kind, k, xi, &zero, &vec![zero.clone(); count]).len();
            SubspaceBasis::from_spanning(len, witness_columns(alg, kind, k, xi, &layout)).expect("lengths match")
        });
        Membership {
            alg,
            kind,
            k,
            xi,
            witness_span,
        }
    }

    pub fn contains(&self, d_map: &GradedEndo) -> bool {
        if d_map.is_zero() {
            return true;
        }
        if d_map.xi() != self.xi || !admissible(self.alg, d_map) {
            return false;
        }
        match &self.witness_span {
            None => is_zero_vec(&residual(self.alg, self.kind, self.k, self.xi, &[d_map.mat()])),
            Some(span) => {
                let count = self.kind.witness_count(self.alg.arity());
                let zeros = vec![Mat::zeros(self.alg.dim(), self.alg.dim()); count];
                let base = witness_residual(self.alg, self.kind, self.k, self.xi, d_map.mat(), &zeros);
                span.contains(&base).expect("lengths match")
            }
        }
    }
}

/// Membership by definition: evaluates the identity with the bracket on all
/// basis tuples (solving for witnesses where the kind has them).
pub fn in_space(alg: &NHomAlgebra, kind: Kind, k: usize, xi: Parity, d_map: &GradedEndo) -> bool {
    Membership::new(alg, kind, k, xi).contains(d_map)
}

/// Checks a QDer witness pair `(D, D')` directly.
pub fn is_quasiderivation_pair(alg: &NHomAlgebra, k: usize, d_map: &GradedEndo, d_prime: &Mat) -> bool {
    let xi = d_map.xi();
    let dp = GradedEndo::new(d_prime.clone(), xi);
    d_map.is_homogeneous(alg.parity())
        && dp.is_homogeneous(alg.parity())
        && commutes_with_alpha(alg, d_map.mat())
        && commutes_with_alpha(alg, d_prime)
        && is_zero_vec(&residual(alg, Kind::QDer, k, xi, &[d_map.mat(), d_prime]))
}
