//! Exact arithmetic kernel: rationals with a point at infinity, the field
//! abstraction used by every residue computation, dense polynomials, finite
//! fields with factorization, rational function fields, simple algebraic
//! extensions, linear algebra, and deterministic pseudo-randomness.

pub mod algext;
pub mod field;
pub mod finite;
pub mod integral;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod resfield;
pub mod rng;

pub use field::{Field, QQ};
pub use finite::Fq;
pub use poly::Poly;
pub use rat::{rat, rat_i64, valp, ExtRat, Rat};
pub use resfield::{REl, RField};
