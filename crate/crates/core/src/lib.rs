//! Exact Fock-space realizations of affine sl2 at the critical level.
//!
//! The crate builds the fermionic Fock space `F` with its Clifford action,
//! the lattice superalgebra `F₋₁` with `⟨β,β⟩ = -1`, twisted modules for the
//! Lie superalgebra `𝒜` spanned by `G±(r)`, `S(n)`, `T(n)`, and the level
//! `-2` action of affine `sl2` on `U ⊗ F₋₁`. On top of these sit exact
//! relation checkers, truncated irreducibility certificates, a Wakimoto
//! realization and graded character tables.
//!
//! All arithmetic is over ℚ; nothing is approximated.

pub mod affine;
pub mod amodule;
pub mod certify;
pub mod characters;
pub mod error;
pub mod exact;
pub mod fock;
pub mod lattice;
pub mod report;
pub mod weyl;

pub use error::{CoreError, ParseScalarError, Result};
pub use exact::{HalfInt, LaurentData, LinComb, Scalar, Sign, SpanBasis};
