//! Exact linear algebra for multiplicative n-Hom Lie superalgebras and their
//! spaces of generalized derivations.

pub mod algebra;
pub mod deriv;
pub mod extension;
pub mod fixtures;
pub mod format;
pub mod harness;
pub mod linalg;
pub mod parity;
pub mod report;

pub use algebra::{NHomAlgebra, ValidationReport};
pub use deriv::{EndoSubspace, GradedEndo, Kind};
pub use linalg::{Mat, Scalar, SubspaceBasis};
pub use parity::Parity;
