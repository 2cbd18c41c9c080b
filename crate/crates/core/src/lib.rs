//! Regular models of the projective line with normal-crossing divisors over
//! Q_p, built from inductive (MacLane) pseudovaluations, and integral bases
//! of differential forms for tame superelliptic curves y^n = f(x).
//!
//! Module layout:
//! - [`base`]: exact arithmetic kernel (rationals with infinity, finite
//!   fields, rational function fields, polynomials, linear algebra).
//! - [`maclane`]: inductive valuations on K[x] — augmentation chains, key
//!   polynomials, residue structure, approximation of irreducible factors.
//! - [`berktree`]: finite trees of pseudovaluations (points of the Berkovich
//!   line), infima and residue classes.
//! - [`plmodel`]: the regular-model algorithms on those trees, normal
//!   crossing insertion, and verification.
//! - [`sheaf`]: defining systems for vertical components and the order of
//!   vanishing of dx.
//! - [`cover`]: the superelliptic layer — extensions of valuations to the
//!   function field of the curve, reduced bases, lattices of integral
//!   differential forms.

pub mod base;
pub mod berktree;
pub mod cover;
pub mod error;
pub mod maclane;
pub mod plmodel;
pub mod sheaf;

pub use error::{Error, Result};
