//! The t-extension `Ň = Nt ⊕ Nt^n` and the embedding of quasiderivations of
//! `N` as derivations of `Ň`.
//!
//! Indices `0..d` hold the `Nt` block and `d..2d` the `Nt^n` block. A bracket
//! multiplies t-exponents, and anything above `t^n` vanishes, so the only
//! nonzero brackets take all arguments from `Nt` and land in `Nt^n`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, NHomAlgebra, ValidationReport};
use crate::deriv::{find_witnesses, is_quasiderivation_pair, solve, witness_kernel, GradedEndo, Kind, Membership};
use crate::harness::DEFAULT_SEED;
use crate::linalg::{extend_to_complement, int, Mat, Scalar, SubspaceBasis};
use crate::parity::Parity;
use crate::report::{Claim, ClaimBuilder, DimEntry, PropReport, Witness};

pub const EMBEDDING: &str = "embedding";
pub const DECOMPOSITION: &str = "decomposition";

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("source algebra fails validation")]
    InvalidSource(ValidationReport),
    #[error("extension fails validation")]
    InvalidExtension(ValidationReport),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("(D, D') is not a quasiderivation pair at level {0}")]
    NotAWitnessPair(usize),
}

#[derive(Clone, Debug)]
pub struct TExtension {
    pub base: NHomAlgebra,
    pub ext: NHomAlgebra,
    /// `U` with `N_p = U_p ⊕ [N, ..., N]_p`, indexed by parity bit.
    pub complement: [SubspaceBasis; 2],
    /// `[N, ..., N]`, indexed by parity bit.
    pub derived: [SubspaceBasis; 2],
    /// Projection of `N` onto `[N, ..., N]` along `U`.
    projection: Mat,
}

/// The extension algebra alone, without validating anything.
pub fn extension_algebra(alg: &NHomAlgebra) -> Result<NHomAlgebra, AlgebraError> {
    let d = alg.dim();
    let mut parity = alg.parity().to_vec();
    parity.extend_from_slice(alg.parity());
    let brackets: Vec<(Vec<usize>, Vec<Scalar>)> = alg
        .table()
        .iter()
        .map(|(tuple, value)| {
            let mut v = vec![Scalar::zero(); 2 * d];
            v[d..].clone_from_slice(value);
            (tuple.clone(), v)
        })
        .collect();
    let mut alpha = Mat::zeros(2 * d, 2 * d);
    alpha.set_block(0, 0, alg.alpha());
    alpha.set_block(d, d, alg.alpha());
    NHomAlgebra::new(alg.arity(), parity, brackets, alpha)
}

/// Builds `Ň` and checks it is again a multiplicative n-Hom Lie superalgebra.
pub fn build_check(alg: &NHomAlgebra) -> Result<TExtension, ExtensionError> {
    let report = alg.validate();
    if !report.is_ok() {
        return Err(ExtensionError::InvalidSource(report));
    }
    let ext = extension_algebra(alg)?;
    let report = ext.validate();
    if !report.is_ok() {
        return Err(ExtensionError::InvalidExtension(report));
    }
    let (g0, g1) = alg.derived_subspace();
    let u0 = extend_to_complement(&g0, &alg.indices_of(Parity::Even));
    let u1 = extend_to_complement(&g1, &alg.indices_of(Parity::Odd));

    // Columns: U first, then the derived part; keep only the derived coordinates.
    let d = alg.dim();
    let cols: Vec<&Vec<Scalar>> = u0.vectors().iter().chain(u1.vectors()).chain(g0.vectors()).chain(g1.vectors()).collect();
    let split = u0.dim() + u1.dim();
    let b = Mat::from_fn(d, d, |r, c| cols[c][r].clone());
    let keep = Mat::diag(&(0..d).map(|i| if i < split { Scalar::zero() } else { Scalar::one() }).collect::<Vec<_>>());
    let projection = &(&b * &keep) * &b.inverse().expect("U and the derived subspace are complementary");

    Ok(TExtension {
        base: alg.clone(),
        ext,
        complement: [u0, u1],
        derived: [g0, g1],
        projection,
    })
}

impl TExtension {
    pub fn dim(&self) -> usize {
        self.ext.dim()
    }

    /// Projection of `N` onto `[N, ..., N]` along `U`.
    pub fn projection(&self) -> &Mat {
        &self.projection
    }

    /// The map acting as `D` on `Nt`, as `D'` on `[N, ..., N]t^n` and as zero on `Ut^n`.
    pub fn phi_unchecked(&self, d_map: &GradedEndo, d_prime: &Mat) -> GradedEndo {
        let d = self.base.dim();
        let mut m = Mat::zeros(2 * d, 2 * d);
        m.set_block(0, 0, d_map.mat());
        m.set_block(d, d, &(d_prime * &self.projection));
        GradedEndo::new(m, d_map.xi())
    }

    /// [`TExtension::phi_unchecked`] after checking that `(D, D')` is a
    /// quasiderivation pair at level `k`.
    pub fn phi(&self, k: usize, d_map: &GradedEndo, d_prime: &Mat) -> Result<GradedEndo, ExtensionError> {
        if !is_quasiderivation_pair(&self.base, k, d_map, d_prime) {
            return Err(ExtensionError::NotAWitnessPair(k));
        }
        Ok(self.phi_unchecked(d_map, d_prime))
    }

    /// The `Nt^n` block as a subspace of `Ň`.
    pub fn top_block(&self) -> SubspaceBasis {
        let d = self.base.dim();
        SubspaceBasis::coordinate(2 * d, d..2 * d)
    }
}

fn ext_dim_entry(space: &str, k: usize, xi: Parity, dim: usize) -> DimEntry {
    DimEntry {
        space: space.to_string(),
        k,
        xi,
        dim,
    }
}

/// φ preserves parity, is injective, does not depend on the witness, and maps
/// quasiderivations of `N` into derivations of `Ň` at the same level.
pub fn check_embedding(alg: &NHomAlgebra, kmax: usize) -> Result<PropReport, ExtensionError> {
    let te = build_check(alg)?;
    Ok(embedding_report(&te, kmax, DEFAULT_SEED))
}

pub fn embedding_report(te: &TExtension, kmax: usize, seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = PropReport::new(EMBEDDING);
    r.seed = Some(seed);
    let mut parity = ClaimBuilder::new("parity-preserving");
    let mut injective = ClaimBuilder::new("injective");
    let mut independent = ClaimBuilder::new("witness-independent");
    let mut into_der = ClaimBuilder::new("image-in-der");
    let dd = te.dim() * te.dim();

    for xi in Parity::BOTH {
        let kernel = witness_kernel(&te.base, xi);
        for k in 0..=kmax {
            let q = solve(&te.base, Kind::QDer, k, xi);
            let der = Membership::new(&te.ext, Kind::Der, k, xi);
            let mut images = Vec::with_capacity(q.dim());
            for (d_map, w) in q.basis.iter().zip(&q.witnesses) {
                let img = te.phi_unchecked(d_map, &w[0]);
                let note = || format!("QDer[k={k},xi={xi}]");
                parity.check(img.xi() == d_map.xi() && img.is_homogeneous(te.ext.parity()), || {
                    Witness::new(note(), &[d_map.mat(), img.mat()])
                });

                // A second witness found independently, and the first one moved along
                // a random direction that leaves the identity untouched.
                let mut alt = Vec::new();
                match find_witnesses(&te.base, Kind::QDer, k, d_map) {
                    Some(ws) => alt.push(ws[0].clone()),
                    None => {
                        independent.check(false, || Witness::new(format!("{}: no witness found", note()), &[d_map.mat()]));
                    }
                }
                let mut moved = w[0].clone();
                for v in &kernel {
                    moved = &moved + &v.scale(&int(rng.gen_range(-3..=3)));
                }
                alt.push(moved);
                for w2 in &alt {
                    let ok = is_quasiderivation_pair(&te.base, k, d_map, w2) && te.phi_unchecked(d_map, w2) == img;
                    independent.check(ok, || Witness::new(note(), &[d_map.mat(), &w[0], w2]));
                }

                into_der.check(der.contains(&img), || Witness::new(note(), &[d_map.mat(), &w[0], img.mat()]));
                images.push(img.to_vec());
            }
            let span = SubspaceBasis::from_spanning(dd, images).expect("lengths match");
            injective.check(span.dim() == q.dim(), || {
                Witness::new(format!("QDer[k={k},xi={xi}]: rank {} of {}", span.dim(), q.dim()), &[])
            });
            r.dims.push(ext_dim_entry("QDer", k, xi, q.dim()));
            r.dims.push(ext_dim_entry("phi(QDer)", k, xi, span.dim()));
        }
    }
    r.dims.sort();
    for c in [parity, injective, independent, into_der] {
        r.push(c.finish());
    }
    r
}

/// When `Z(N) = 0`: `Der(Ň) = φ(QDer(N)) ⊕ ZDer(Ň)` per level, and `Z(Ň) = Nt^n`.
pub fn check_decomposition(alg: &NHomAlgebra, kmax: usize) -> Result<PropReport, ExtensionError> {
    let te = build_check(alg)?;
    Ok(decomposition_report(&te, kmax))
}

pub fn decomposition_report(te: &TExtension, kmax: usize) -> PropReport {
    let mut r = PropReport::new(DECOMPOSITION);
    let ids = ["center-is-top-block", "direct-sum-spans", "direct-sum-trivial-intersection"];
    let (z0, z1) = te.base.center();
    if !(z0.is_zero() && z1.is_zero()) {
        for id in ids {
            r.push(Claim::skipped(id, "the center of N is nonzero"));
        }
        return r;
    }

    let mut center = ClaimBuilder::new(ids[0]);
    let (c0, c1) = te.ext.center();
    let ext_center = c0.sum(&c1).expect("same ambient");
    center.check(ext_center == te.top_block(), || {
        Witness::new(format!("center of the extension has dimension {}", ext_center.dim()), &[])
    });

    let mut spans = ClaimBuilder::new(ids[1]);
    let mut trivial = ClaimBuilder::new(ids[2]);
    let dd = te.dim() * te.dim();
    for k in 0..=kmax {
        for xi in Parity::BOTH {
            let q = solve(&te.base, Kind::QDer, k, xi);
            let images = q.basis.iter().zip(&q.witnesses).map(|(d, w)| te.phi_unchecked(d, &w[0]).to_vec()).collect();
            let a = SubspaceBasis::from_spanning(dd, images).expect("lengths match");
            let zder = solve(&te.ext, Kind::ZDer, k, xi);
            let der = solve(&te.ext, Kind::Der, k, xi);
            let (b, c) = (zder.as_subspace(), der.as_subspace());
            let note = format!("k={k},xi={xi}: phi(QDer) {}, ZDer {}, Der {}", a.dim(), b.dim(), c.dim());
            let meet = a.intersect(b).expect("same ambient");
            trivial.check(meet.is_zero(), || Witness::new(note.clone(), &[]));
            spans.check(&a.sum(b).expect("same ambient") == c, || Witness::new(note.clone(), &[]));
            r.dims.push(ext_dim_entry("phi(QDer)", k, xi, a.dim()));
            r.dims.push(ext_dim_entry("ZDer(ext)", k, xi, b.dim()));
            r.dims.push(ext_dim_entry("Der(ext)", k, xi, c.dim()));
        }
    }
    r.dims.sort();
    for c in [center, spans, trivial] {
        r.push(c.finish());
    }
    r
}
