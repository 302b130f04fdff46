//! Small algebras bundled for tests, examples and the CLI.

use crate::algebra::NHomAlgebra;
use crate::linalg::{int, unit_vec, Mat, Scalar};
use crate::parity::Parity::{self, Even, Odd};

fn build(arity: usize, parity: Vec<Parity>, brackets: Vec<(Vec<usize>, Vec<Scalar>)>, alpha: Mat) -> NHomAlgebra {
    NHomAlgebra::new(arity, parity, brackets, alpha).expect("fixture is well-formed")
}

fn scaled_unit(d: usize, i: usize, c: i64) -> Vec<Scalar> {
    let mut v = unit_vec(d, i);
    v[i] = int(c);
    v
}

/// Two-dimensional, even, zero bracket, alpha = id.
pub fn abelian2() -> NHomAlgebra {
    build(2, vec![Even, Even], vec![], Mat::identity(2))
}

/// `abelian2` with alpha = 0; the only bundled twist that is not surjective.
pub fn abelian2_zero_alpha() -> NHomAlgebra {
    build(2, vec![Even, Even], vec![], Mat::zeros(2, 2))
}

/// The non-abelian 2-dimensional Lie algebra: `[e1, e2] = e2`, alpha = id.
pub fn aff1() -> NHomAlgebra {
    build(2, vec![Even, Even], vec![(vec![0, 1], unit_vec(2, 1))], Mat::identity(2))
}

/// `aff1` twisted by alpha = diag(1, 2).
pub fn homaff1() -> NHomAlgebra {
    build(
        2,
        vec![Even, Even],
        vec![(vec![0, 1], unit_vec(2, 1))],
        Mat::from_i64(&[&[1, 0], &[0, 2]]),
    )
}

/// Parity (0, 1), `[e1, e2] = e2`, `[e2, e2] = 0`, alpha = id.
pub fn super2() -> NHomAlgebra {
    build(2, vec![Even, Odd], vec![(vec![0, 1], unit_vec(2, 1))], Mat::identity(2))
}

/// The simple 4-dimensional 3-Lie algebra: `[e_i, e_j, e_k] = sum_l eps_{ijkl} e_l`.
pub fn three_lie4() -> NHomAlgebra {
    let brackets = vec![
        (vec![0, 1, 2], scaled_unit(4, 3, 1)),
        (vec![0, 1, 3], scaled_unit(4, 2, -1)),
        (vec![0, 2, 3], scaled_unit(4, 1, 1)),
        (vec![1, 2, 3], scaled_unit(4, 0, -1)),
    ];
    build(3, vec![Even; 4], brackets, Mat::identity(4))
}

/// The five algebras every check is run against.
pub fn bundled() -> Vec<(&'static str, NHomAlgebra)> {
    vec![
        ("abelian2", abelian2()),
        ("aff1", aff1()),
        ("homaff1", homaff1()),
        ("super2", super2()),
        ("threeLie4", three_lie4()),
    ]
}

pub fn by_name(name: &str) -> Option<NHomAlgebra> {
    match name {
        "abelian2-zero-alpha" => Some(abelian2_zero_alpha()),
        _ => bundled().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a),
    }
}

/// `[e1, e2] = e1`, `[e2, e3] = e2` on three even generators: the Jacobi sum of
/// `(e1, e2, e3)` is `e1`.
pub fn broken_jacobi3() -> NHomAlgebra {
    build(
        2,
        vec![Even; 3],
        vec![(vec![0, 1], unit_vec(3, 0)), (vec![1, 2], unit_vec(3, 1))],
        Mat::identity(3),
    )
}

/// `aff1` with alpha = diag(2, 1), which is not a bracket homomorphism.
pub fn non_multiplicative_aff1() -> NHomAlgebra {
    build(
        2,
        vec![Even, Even],
        vec![(vec![0, 1], unit_vec(2, 1))],
        Mat::from_i64(&[&[2, 0], &[0, 1]]),
    )
}

/// `super2` with `[e1, e2] = e1`: an odd input lands in the even part.
pub fn bad_degree_super2() -> NHomAlgebra {
    build(2, vec![Even, Odd], vec![(vec![0, 1], unit_vec(2, 0))], Mat::identity(2))
}

/// `super2` with an alpha that mixes parities.
pub fn odd_alpha_super2() -> NHomAlgebra {
    build(
        2,
        vec![Even, Odd],
        vec![(vec![0, 1], unit_vec(2, 1))],
        Mat::from_i64(&[&[1, 1], &[0, 1]]),
    )
}

/// Deliberately broken inputs; each fails at least one axiom.
pub fn corrupted() -> Vec<(&'static str, NHomAlgebra)> {
    vec![
        ("broken-jacobi3", broken_jacobi3()),
        ("non-multiplicative-aff1", non_multiplicative_aff1()),
        ("bad-degree-super2", bad_degree_super2()),
        ("odd-alpha-super2", odd_alpha_super2()),
    ]
}
