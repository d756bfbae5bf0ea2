//! Exact computation of derivation-type invariants of finite-dimensional
//! algebras given by structure constants.
//!
//! An algebra is presented by its rank-3 tensor `γ` with
//! `e_i · e_j = Σ_k γ_{ij}^k e_k`.  For such a presentation this crate
//! computes, over ℚ with arbitrary-precision arithmetic and no rounding
//! anywhere:
//!
//! * the derivation algebra `Der(A)`,
//! * the centroid `C(A)` and quasi-centroid `QC(A)`,
//! * the central derivations `ZDer(A)`,
//! * the quasi-derivations `QDer(A)` as a space of pairs `(D, D′)`,
//! * the center `Z(A)`, centralizers, ideals, and quotients,
//!
//! plus structural property checks relating these spaces (bracket
//! containments, operator identities, and the centroid decomposition along
//! an ideal) and a batch verifier that compares computed results against a
//! catalog of expected dimensions and constraint patterns.
//!
//! Outputs are canonical: every solution space is reported by its unique
//! reduced-row-echelon basis, so equal inputs produce byte-identical
//! reports.

pub mod algebra;
pub mod catalog;
pub mod fixtures;
pub mod linmap;
pub mod matrix;
pub mod properties;
pub mod rational;
pub mod solvers;
pub mod subspace;

pub use algebra::{Algebra, AlgebraElement, AlgebraError, Ideal, Quotient, StructureConstants};
pub use catalog::{BatchReport, CatalogEntry, CatalogError, VerificationResult};
pub use linmap::LinearMap;
pub use matrix::MatrixQ;
pub use properties::{PropertyCheck, PropertyReport};
pub use rational::Rational;
pub use solvers::{MapKind, MapSpace, Nonassociative, QDerPairSpace, SolverError};
pub use subspace::SubspaceQ;
