//! Exact symbolic engine for the rational Cherednik algebra `H_{t,c}` of the
//! dihedral group of order `2d` at equal parameters.
//!
//! The crate builds the algebra in PBW normal form over the coefficient ring
//! `Q(z)[a][t]/(t^N)` (`z` a primitive `2d`-th root of unity), constructs the
//! generators of its center, computes Poisson brackets by first-order
//! deformation in `t`, and checks a catalogue of identities about the center:
//! presentations, bracket tables, the Lie algebra at the cuspidal point, the
//! `sl_2` equivariance layer and the fixed locus of the diagram automorphism.
//!
//! Start with [`cherednik::Algebra`]; the runnable programs under `examples/`
//! show one capability each.

pub mod cherednik;
pub mod cli;
pub mod cuspidal;
pub mod dihedral;
pub mod linalg;
pub mod mpoly;
pub mod polyring;
pub mod psi;
pub mod report;
pub mod scalar;
pub mod sl2;
pub mod tau;
pub mod verify;

pub use cherednik::{Algebra, HElement};
pub use dihedral::GroupElement;
pub use polyring::{CommPoly, Mono};
pub use psi::PsiPoly;
pub use report::{Check, CheckReport, Mutation, Report, Status, VerifyOptions};
pub use scalar::{Cyclotomic, Scalar, ScalarRing};
