//! Exact scalar arithmetic and the finite-dimensional exterior algebra that
//! every other module computes in.
//!
//! Layering, bottom to top:
//!
//! * [`Rational`] — arbitrary-precision rationals (re-export of
//!   `num_rational::BigRational` plus small constructors);
//! * [`Gaussian`] — the field `ℚ(i)`;
//! * [`QuadNumber`] — real quadratic fields `ℚ(√d)`, used by the lattice
//!   module for unit eigenvalues;
//! * [`Weight`] — rational vectors recording exponents with respect to the
//!   formal weight symbols `λ_1, …, λ_s`;
//! * [`Laurent`] — sparse multivariate Laurent polynomials over `ℚ(i)`; the
//!   coefficient ring of all differential forms (weights enter `d` as the
//!   linear forms [`Laurent::from_weight`]);
//! * [`GeneratorSet`] / [`Monomial`] / [`Character`] — the declared coframe,
//!   bitmask wedge monomials over it, and the multiplicative characters used
//!   to twist the invariant complex;
//! * [`Form`] — finite sums `Σ coeff · character · monomial` with wedge,
//!   conjugation and exterior derivative (the latter via the structure
//!   equations stored in the generator set);
//! * [`matrix`] — exact linear algebra over `ℚ(i)` and `ℚ` (rank, kernel,
//!   solve, determinant, positive-definiteness).

mod form;
mod gaussian;
mod laurent;
pub mod matrix;
mod monomial;
mod quad;
mod rational;
mod weight;

pub use form::Form;
pub use gaussian::Gaussian;
pub use laurent::Laurent;
pub use monomial::{
    monomials_from_pool, Character, CharacterContext, GeneratorDecl, GeneratorSet, Monomial,
    MAX_GENERATORS,
};
pub(crate) use quad::square_free_part;
pub use quad::QuadNumber;
pub use rational::{rat, rat_int, Rational};
pub use weight::Weight;
