use nhom::deriv::{alpha_twist, in_space, jordan_product, solve, supercommutator, GradedEndo, Kind};
use nhom::format::{parse_algebra_str, serialize_algebra};
use nhom::harness::random_basis_change;
use nhom::linalg::{int, nullspace, rref, Mat, Scalar, SubspaceBasis};
use nhom::{fixtures, NHomAlgebra, Parity};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(small(), rows * cols)
        .prop_map(move |v| Mat::from_fn(rows, cols, |r, c| int(v[r * cols + c])))
}

fn vectors(count: usize, len: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(small().prop_map(int), len), 0..=count)
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(small().prop_map(int), len)
}

fn fixture() -> impl Strategy<Value = (&'static str, NHomAlgebra)> {
    prop::sample::select(fixtures::bundled())
}

/// A random homogeneous vector of parity `p`.
fn homogeneous(alg: &NHomAlgebra, v: &[Scalar], p: Parity) -> Vec<Scalar> {
    v.iter()
        .enumerate()
        .map(|(i, x)| if alg.parity()[i] == p { x.clone() } else { int(0) })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_width(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let k = nullspace(&m);
        prop_assert_eq!(rref(&m).rank + k.dim(), m.cols());
        for v in k.vectors() {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(a in vectors(4, 5), b in vectors(4, 5)) {
        let u = SubspaceBasis::from_spanning(5, a).unwrap();
        let w = SubspaceBasis::from_spanning(5, b).unwrap();
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u).unwrap() && s.contains_subspace(&w).unwrap());
        prop_assert!(u.contains_subspace(&i).unwrap() && w.contains_subspace(&i).unwrap());
    }

    #[test]
    fn canonical_basis_ignores_the_spanning_set(a in vectors(4, 4), mix in matrix(4, 4)) {
        let u = SubspaceBasis::from_spanning(4, a.clone()).unwrap();
        // Add combinations of the original vectors; the span can only stay the same.
        let mut more = a.clone();
        for r in 0..4 {
            let mut v = vec![int(0); 4];
            for (j, x) in a.iter().enumerate() {
                for (c, y) in x.iter().enumerate() {
                    v[c] += mix.get(r, j % 4) * y;
                }
            }
            more.push(v);
        }
        more.reverse();
        prop_assert_eq!(SubspaceBasis::from_spanning(4, more).unwrap(), u);
    }

    #[test]
    fn bracket_is_multilinear((_, alg) in fixture(), seed in any::<u64>(), a in small(), slot in 0usize..3) {
        let d = alg.dim();
        let n = alg.arity();
        let slot = slot % n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || -> Vec<Scalar> { (0..d).map(|_| int(rand::Rng::gen_range(&mut rng, -3..=3))).collect() };
        let args: Vec<Vec<Scalar>> = (0..n).map(|_| draw()).collect();
        let extra = draw();
        let eval = |v: &[Scalar]| {
            let mut xs: Vec<&[Scalar]> = args.iter().map(|x| x.as_slice()).collect();
            xs[slot] = v;
            alg.bracket(&xs).unwrap()
        };
        let combo: Vec<Scalar> = args[slot].iter().zip(&extra).map(|(x, y)| int(a) * x + y).collect();
        let lhs = eval(&combo);
        let rhs: Vec<Scalar> = eval(&args[slot]).iter().zip(eval(&extra)).map(|(x, y)| int(a) * x + y).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_super_skew_symmetric(
        (_, alg) in fixture(),
        raw in prop::collection::vec(vector(4), 3),
        parities in prop::collection::vec(any::<bool>(), 3),
        at in 0usize..2,
    ) {
        let d = alg.dim();
        let n = alg.arity();
        let at = at % (n - 1);
        let ps: Vec<Parity> = parities.iter().map(|&b| if b { Parity::Odd } else { Parity::Even }).collect();
        let args: Vec<Vec<Scalar>> = (0..n).map(|i| homogeneous(&alg, &raw[i][..d], ps[i])).collect();
        let refs: Vec<&[Scalar]> = args.iter().map(|x| x.as_slice()).collect();
        let mut swapped = refs.clone();
        swapped.swap(at, at + 1);
        let lhs = alg.bracket(&refs).unwrap();
        let rhs = alg.bracket(&swapped).unwrap();
        let sign = if (ps[at] * ps[at + 1]).is_odd() { int(1) } else { int(-1) };
        prop_assert_eq!(lhs, rhs.iter().map(|x| &sign * x).collect::<Vec<_>>());
    }

    #[test]
    fn random_span_elements_pass_membership(
        (_, alg) in fixture(),
        kind in prop::sample::select(Kind::ALL.to_vec()),
        k in 0usize..3,
        odd in any::<bool>(),
        coeffs in prop::collection::vec(small(), 16),
    ) {
        let xi = if odd { Parity::Odd } else { Parity::Even };
        let space = solve(&alg, kind, k, xi);
        let d = alg.dim();
        let mut acc = GradedEndo::zero(d, xi);
        for (b, c) in space.basis.iter().zip(&coeffs) {
            acc = acc.add(&b.scale(&int(*c)));
        }
        prop_assert!(in_space(&alg, kind, k, xi, &acc));
    }

    #[test]
    fn twist_raises_the_level(
        (_, alg) in fixture(),
        kind in prop::sample::select(vec![Kind::Der, Kind::ZDer, Kind::C]),
        k in 0usize..2,
        odd in any::<bool>(),
    ) {
        let xi = if odd { Parity::Odd } else { Parity::Even };
        for d in &solve(&alg, kind, k, xi).basis {
            let t = alpha_twist(&alg, d).unwrap();
            prop_assert!(in_space(&alg, kind, k + 1, xi, &t));
        }
    }

    #[test]
    fn jordan_product_is_supercommutative(a in matrix(2, 2), b in matrix(2, 2), pa in any::<bool>(), pb in any::<bool>()) {
        // Arbitrary 2x2 matrices on a (1|1) space, cut down to the chosen degrees.
        let parity = [Parity::Even, Parity::Odd];
        let cut = |m: &Mat, odd: bool| {
            let xi = if odd { Parity::Odd } else { Parity::Even };
            let m = Mat::from_fn(2, 2, |r, c| if parity[r] == parity[c] + xi { m.get(r, c).clone() } else { int(0) });
            GradedEndo::new(m, xi)
        };
        let (d, e) = (cut(&a, pa), cut(&b, pb));
        let sign = if (d.xi() * e.xi()).is_odd() { int(-1) } else { int(1) };
        prop_assert_eq!(jordan_product(&d, &e), jordan_product(&e, &d).scale(&sign));
        prop_assert_eq!(supercommutator(&d, &e), supercommutator(&e, &d).scale(&-sign));
    }

    #[test]
    fn basis_change_round_trips_through_files((_, alg) in fixture(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_basis_change(alg.parity(), &mut rng);
        let moved = alg.change_basis(&p).unwrap();
        prop_assert!(moved.validate().is_ok());
        let text = serialize_algebra(&moved);
        let back = parse_algebra_str(&text).unwrap();
        prop_assert_eq!(serialize_algebra(&back), text);
        prop_assert_eq!(back, moved);
    }
}
