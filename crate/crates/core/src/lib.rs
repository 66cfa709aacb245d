//! Exact computations with the graded Lie algebras of pure braid groups of
//! surfaces and their two-step quotients, and a solver for equivariant Lie
//! sections of the forgetful projections between them.
//!
//! Everything is generic over an exact [`scalar::Field`]; the aliases below fix
//! arbitrary-precision rationals.

pub mod characters;
pub mod error;
pub mod free_lie;
pub mod linalg;
pub mod presentation;
pub mod scalar;
pub mod sections;

pub use error::{Error, Result};

pub type Scalar = num_rational::BigRational;
pub type Element = free_lie::LieElement<Scalar>;
pub type Matrix = linalg::SparseMatrix<Scalar>;
pub type Algebra = presentation::PresentedGradedLie<Scalar>;
pub type Class = presentation::QuotientElement<Scalar>;
pub type Candidate = sections::SectionCandidate<Scalar>;
pub type Certificate = sections::ObstructionCertificate<Scalar>;
