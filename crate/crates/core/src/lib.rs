//! Extension towers F_p ⊂ F_{p^ℓ} ⊂ F_{p^ℓ²} ⊂ … over a prime field, for an
//! odd prime step ℓ, with quasi-linear changes of basis between consecutive
//! levels.
//!
//! Four constructions are provided, picked automatically from the congruence
//! class of p modulo ℓ:
//!
//! * radical towers X^(ℓ^i) − y₀ when ℓ | p−1 ([`tower`]);
//! * Pell-conic towers built from division polynomials when ℓ | p+1
//!   ([`conic`]);
//! * towers from cycles of ℓ-isogenies between elliptic curves when
//!   ℓ ∤ p−1 ([`elliptic`]);
//! * a general construction that descends a radical tower over a cyclotomic
//!   extension, with no condition on p mod ℓ ([`descent`]).
//!
//! The first three produce step relations of the fiber shape
//! T(X, Y) = f(Y) − X·g(Y), for which [`liftpush`] converts between the
//! univariate and bivariate bases of a level in quasi-linear time. The
//! [`tower`] module wraps everything behind one facade with lazy level
//! construction, embeddings, projections and verification reports.

pub mod conic;
pub mod descent;
pub mod elliptic;
pub mod error;
pub mod factor;
pub mod field;
pub mod liftpush;
pub mod poly;
pub mod tower;

pub use error::{Error, Result};
pub use field::{FieldElement, Legendre, PrimeField};
pub use liftpush::{BiPoly, FiberRelation};
pub use poly::{DensePoly, ModulusContext};
// tower re-exports land once the module exists
