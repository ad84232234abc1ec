//! Exact symbolic calculus on the invariant differential forms of two families
//! of solvmanifolds:
//!
//! * **generalized Nakamura models** `Γ\(ℂ ⋉_ρ ℂⁿ)`, where the base coordinate
//!   acts on the fiber by `ρ(w) = diag(e^{λ_i w})` with rational-weight
//!   exponents summing to zero, and
//! * **semidirect products of complex factors** `Γ\(ℂ^{2n} ⋉_ρ ℂ^{2m})`, where
//!   each pair of fiber coordinates is scaled by a pair of mutually inverse
//!   characters of the base.
//!
//! Everything is computed exactly: coefficients live in the Gaussian rationals
//! `ℚ(i)` extended by formal weight symbols (sparse Laurent polynomials), and
//! lattice data lives in real quadratic fields `ℚ(√d)`.  On top of the exterior
//! calculus the crate decides:
//!
//! * de Rham Betti numbers two independent ways (finite invariant subcomplex
//!   elimination vs. weight-sector counting) and Dolbeault Hodge numbers;
//! * existence of invariant symplectic structures via the weight-pairing
//!   criterion, together with an independent generic-2-form oracle;
//! * the hard Lefschetz condition by exact rank computations on the Lefschetz
//!   maps `[α] ↦ [ω^k ∧ α]`;
//! * `∂∂̄`-lemma failure, exactness witnesses for top bidegree-(N−1,N−1)
//!   classes, and taming/compatibility of almost complex structures;
//! * integer lattice data: characteristic polynomials, unit-eigenvalue
//!   diagonalizations over `ℚ(√d)`, and exact semidirect-product group
//!   arithmetic for lattice splittings;
//! * almost complex coframes and the small deformation family of the
//!   five-dimensional model, with exact verification of their structure
//!   equations.

pub mod algebra;
pub mod cohomology;
pub mod kodaira;
pub mod lattice;
pub mod model;
pub mod symplectic;

mod error;

pub use error::{Error, Result};

// Re-exported so downstream users build integer-matrix inputs against the
// same bignum types the lattice module consumes.
pub use num_bigint;

/// Crate version, for embedding in generated result documents.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
