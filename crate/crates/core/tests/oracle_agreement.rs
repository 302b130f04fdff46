//! The solver against a brute-force dense assembly that solves the joint
//! system first and projects afterwards.

use nhom::deriv::{omega, solve, Kind};
use nhom::extension::build_check;
use nhom::{fixtures, NHomAlgebra, Parity};
use nhom_oracle as oracle;

fn assert_same_span(alg: &NHomAlgebra, name: &str, kind: Kind, k: usize, xi: Parity) {
    let d = alg.dim();
    let ours = solve(alg, kind, k, xi);
    let theirs = oracle::canonical_span(oracle::projection(alg, kind, k, xi), d * d);
    assert_eq!(
        ours.as_subspace().vectors(),
        theirs.as_slice(),
        "{name}: {kind} at k={k}, xi={xi}"
    );
}

#[test]
fn every_space_of_every_fixture_matches() {
    for (name, alg) in fixtures::bundled() {
        for kind in Kind::ALL {
            for k in 0..=2 {
                for xi in Parity::BOTH {
                    assert_same_span(&alg, name, kind, k, xi);
                }
            }
        }
    }
}

#[test]
fn omega_matches() {
    for (name, alg) in fixtures::bundled() {
        for xi in Parity::BOTH {
            assert_eq!(omega(&alg, xi).dim(), oracle::dimension(&alg, Kind::Omega, 0, xi), "{name}");
        }
    }
}

#[test]
fn dimension_table_values() {
    use Kind::*;
    use Parity::*;
    let aff1 = fixtures::aff1();
    for (kind, dim) in [(Der, 2), (C, 1), (QC, 1), (QDer, 4), (GDer, 4), (ZDer, 0)] {
        assert_eq!(oracle::dimension(&aff1, kind, 0, Even), dim, "aff1 {kind}");
        assert_eq!(solve(&aff1, kind, 0, Even).dim(), dim, "aff1 {kind}");
    }
    assert_eq!(oracle::center_dimension(&aff1), 0);
    assert_eq!(oracle::dimension(&fixtures::homaff1(), Der, 1, Even), 1);
    assert_eq!(oracle::dimension(&fixtures::super2(), Der, 0, Even), 1);
    assert_eq!(oracle::dimension(&fixtures::super2(), Der, 0, Odd), 1);
    assert_eq!(oracle::dimension(&fixtures::three_lie4(), Der, 0, Even), 6);
    let abelian = fixtures::abelian2();
    for kind in Kind::ALL {
        assert_eq!(oracle::dimension(&abelian, kind, 0, Even), 4, "abelian2 {kind}");
    }
}

#[test]
fn aff1_extension_spaces_match() {
    let te = build_check(&fixtures::aff1()).unwrap();
    for kind in [Kind::Der, Kind::ZDer] {
        for k in 0..=2 {
            for xi in Parity::BOTH {
                assert_same_span(&te.ext, "aff1 extension", kind, k, xi);
            }
        }
    }
    assert_eq!(oracle::dimension(&te.ext, Kind::Der, 0, Parity::Even), 10);
    assert_eq!(oracle::dimension(&te.ext, Kind::ZDer, 0, Parity::Even), 6);
    assert_eq!(oracle::center_dimension(&te.ext), 2);
}

#[test]
fn super2_extension_spaces_match() {
    let te = build_check(&fixtures::super2()).unwrap();
    for kind in [Kind::Der, Kind::ZDer] {
        for xi in Parity::BOTH {
            assert_same_span(&te.ext, "super2 extension", kind, 0, xi);
        }
    }
}
