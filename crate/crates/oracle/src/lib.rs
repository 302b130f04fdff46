//! Brute-force reference computations for tests.
//!
//! Everything here is deliberately naive and shares no code with the solver
//! beyond reading structure constants: every one of the `d*d` entries of every
//! unknown map is a variable, homogeneity is imposed by explicit equations,
//! brackets are expanded from the dense structure tensor, and the joint
//! solution space is found first and projected onto the `D` block afterwards.

use nhom::{Kind, NHomAlgebra, Parity, Scalar};
use num_traits::{One, Zero};

/// Dense Gauss-Jordan elimination; returns the nonzero reduced rows and their pivots.
pub fn rref(mut rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Scalar>>, cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// A basis of `{x : A x = 0}` for the given equation rows.
pub fn kernel(rows: Vec<Vec<Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    let (reduced, pivots) = rref(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Canonical reduced basis of the span of `vectors`.
pub fn canonical_span(vectors: Vec<Vec<Scalar>>, len: usize) -> Vec<Vec<Scalar>> {
    rref(vectors, len).0
}

/// Dense structure tensor: `t[i_1..i_n][o]` for every ordered tuple.
struct Tensor {
    d: usize,
    n: usize,
    values: Vec<Vec<Scalar>>,
}

impl Tensor {
    fn new(alg: &NHomAlgebra) -> Self {
        let (d, n) = (alg.dim(), alg.arity());
        let values = (0..d.pow(n as u32)).map(|flat| alg.basis_bracket_dense(&unflatten(flat, d, n))).collect();
        Tensor { d, n, values }
    }

    /// Multilinear expansion of `[v_1, ..., v_n]`.
    fn bracket(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.d];
        for flat in 0..self.values.len() {
            let idx = unflatten(flat, self.d, self.n);
            let mut coef = Scalar::one();
            for (a, &i) in args.iter().zip(&idx) {
                if a[i].is_zero() {
                    coef = Scalar::zero();
                    break;
                }
                coef *= &a[i];
            }
            if !coef.is_zero() {
                for (o, v) in self.values[flat].iter().enumerate() {
                    out[o] += &coef * v;
                }
            }
        }
        out
    }
}

fn unflatten(mut flat: usize, d: usize, n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for slot in (0..n).rev() {
        idx[slot] = flat % d;
        flat /= d;
    }
    idx
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

fn mat_col(alg_alpha: &[Vec<Scalar>], c: usize) -> Vec<Scalar> {
    alg_alpha.iter().map(|row| row[c].clone()).collect()
}

fn mat_pow(m: &[Vec<Scalar>], k: usize) -> Vec<Vec<Scalar>> {
    let d = m.len();
    let mut acc: Vec<Vec<Scalar>> = (0..d).map(|i| unit(d, i)).collect();
    for _ in 0..k {
        acc = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| (0..d).fold(Scalar::zero(), |s, t| s + &acc[r][t] * &m[t][c]))
                    .collect()
            })
            .collect();
    }
    acc
}

/// Which unknown map sits in each slot and on the right-hand side of one identity.
struct Identity {
    /// `(slot, block, graded sign, negate)`
    slots: Vec<(usize, usize, bool, bool)>,
    /// `(block, negate)`
    rhs: Option<(usize, bool)>,
}

fn identities(kind: Kind, n: usize) -> (usize, Vec<Identity>) {
    match kind {
        Kind::Omega => (1, vec![]),
        Kind::Der => (
            1,
            vec![Identity {
                slots: (0..n).map(|j| (j, 0, true, false)).collect(),
                rhs: Some((0, true)),
            }],
        ),
        Kind::ZDer => (
            1,
            vec![
                Identity {
                    slots: vec![(0, 0, false, false)],
                    rhs: None,
                },
                Identity {
                    slots: vec![],
                    rhs: Some((0, false)),
                },
            ],
        ),
        Kind::C => (
            1,
            (0..n)
                .map(|j| Identity {
                    slots: vec![(j, 0, true, false)],
                    rhs: Some((0, true)),
                })
                .collect(),
        ),
        Kind::QC => (
            1,
            (1..n)
                .map(|j| Identity {
                    slots: vec![(0, 0, false, false), (j, 0, true, true)],
                    rhs: None,
                })
                .collect(),
        ),
        Kind::QDer => (
            2,
            vec![Identity {
                slots: (0..n).map(|j| (j, 0, true, false)).collect(),
                rhs: Some((1, true)),
            }],
        ),
        Kind::GDer => {
            let mut slots = vec![(0, 0, false, false)];
            slots.extend((1..n).map(|j| (j, j, true, false)));
            (
                n + 1,
                vec![Identity {
                    slots,
                    rhs: Some((n, true)),
                }],
            )
        }
    }
}

/// Spanning set (in column-major `d*d` coordinates) of the projection of the
/// joint solution space of `kind` at `(k, xi)` onto the `D` block.
pub fn projection(alg: &NHomAlgebra, kind: Kind, k: usize, xi: Parity) -> Vec<Vec<Scalar>> {
    let d = alg.dim();
    let n = alg.arity();
    let dd = d * d;
    let (blocks, ids) = identities(kind, n);
    let total = blocks * dd;
    let var = |block: usize, r: usize, c: usize| block * dd + c * d + r;
    let parity = alg.parity();
    let alpha: Vec<Vec<Scalar>> = (0..d).map(|r| (0..d).map(|c| alg.alpha().get(r, c).clone()).collect()).collect();
    let ak = mat_pow(&alpha, k);
    let tensor = Tensor::new(alg);
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();

    for b in 0..blocks {
        for r in 0..d {
            for c in 0..d {
                if parity[r] != parity[c] + xi {
                    let mut e = vec![Scalar::zero(); total];
                    e[var(b, r, c)] = Scalar::one();
                    eqs.push(e);
                }
                // (M alpha - alpha M)[r][c]
                let mut e = vec![Scalar::zero(); total];
                for t in 0..d {
                    e[var(b, r, t)] += &alpha[t][c];
                    e[var(b, t, c)] -= &alpha[r][t];
                }
                eqs.push(e);
            }
        }
    }

    for flat in 0..d.pow(n as u32) {
        let tuple = unflatten(flat, d, n);
        let value = tensor.bracket(&tuple.iter().map(|&i| unit(d, i)).collect::<Vec<_>>());
        for id in &ids {
            let mut rows = vec![vec![Scalar::zero(); total]; d];
            for &(slot, block, graded, negate) in &id.slots {
                let prefix = Parity::sum(tuple[..slot].iter().map(|&i| &parity[i]));
                let odd = negate ^ (graded && (xi * prefix).is_odd());
                // M e_{i_slot} = sum_r M[r][i_slot] e_r
                for r in 0..d {
                    let args: Vec<Vec<Scalar>> = (0..n)
                        .map(|s| if s == slot { unit(d, r) } else { mat_col(&ak, tuple[s]) })
                        .collect();
                    let w = tensor.bracket(&args);
                    for o in 0..d {
                        let v = if odd { -w[o].clone() } else { w[o].clone() };
                        rows[o][var(block, r, tuple[slot])] += v;
                    }
                }
            }
            if let Some((block, negate)) = id.rhs {
                for o in 0..d {
                    for c in 0..d {
                        let v = if negate { -value[c].clone() } else { value[c].clone() };
                        rows[o][var(block, o, c)] += v;
                    }
                }
            }
            eqs.extend(rows);
        }
    }

    kernel(eqs, total).into_iter().map(|v| v[..dd].to_vec()).collect()
}

/// Dimension of the projection computed by [`projection`].
pub fn dimension(alg: &NHomAlgebra, kind: Kind, k: usize, xi: Parity) -> usize {
    let d = alg.dim();
    rank(projection(alg, kind, k, xi), d * d)
}

/// Dimension of the center, from the equations `[z, e_{i_2}, ..., e_{i_n}] = 0`.
pub fn center_dimension(alg: &NHomAlgebra) -> usize {
    let d = alg.dim();
    let n = alg.arity();
    let tensor = Tensor::new(alg);
    let mut eqs = Vec::new();
    for flat in 0..d.pow((n - 1) as u32) {
        let rest = unflatten(flat, d, n - 1);
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|z| {
                let mut args = vec![unit(d, z)];
                args.extend(rest.iter().map(|&i| unit(d, i)));
                tensor.bracket(&args)
            })
            .collect();
        for o in 0..d {
            eqs.push(cols.iter().map(|col| col[o].clone()).collect());
        }
    }
    d - rank(eqs, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nhom::fixtures;

    #[test]
    fn kernel_of_a_rank_one_matrix() {
        let q = |x: i64| Scalar::from_integer(x.into());
        let k = kernel(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]], 3);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn hand_counts_on_aff1() {
        let a = fixtures::aff1();
        assert_eq!(dimension(&a, Kind::Der, 0, Parity::Even), 2);
        assert_eq!(dimension(&a, Kind::QDer, 0, Parity::Even), 4);
        assert_eq!(center_dimension(&a), 0);
        assert_eq!(center_dimension(&fixtures::abelian2()), 2);
    }
}
