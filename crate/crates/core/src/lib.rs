//! Exact Kazhdan–Lusztig polynomials for the symmetric group and canonical
//! bases of tensor powers of the vector representation of quantum `sl_k`.
//!
//! Three independent routes are provided and cross-checked:
//!
//! * [`hecke`]: triangular solve for the KL basis of the (parabolic) Hecke
//!   module, for either eigenvalue `u ∈ {-1, v^-2}`;
//! * [`tensor`]: the same bases transported into `V^{⊗n}`, plus a direct
//!   solve against the braiding-defined involution;
//! * [`sl2`] and [`grassmann`]: closed constructions for `k = 2`
//!   (invariant insertion, Jones–Wenzl projectors, the local coefficient
//!   recursion).

pub mod combinatorics;
pub mod error;
pub mod grassmann;
pub mod hecke;
pub mod laurent;
pub mod sl2;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{gauss_binomial, LaurentPoly, QPolynomial, RationalFunction};
