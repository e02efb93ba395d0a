//! Arrow pencils of Calabi-Yau hypersurfaces in Grassmannians.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, prime fields, sparse Laurent polynomials, sparse
//!   exact linear algebra;
//! - [`grassmann`]: partitions and Plücker indices, Plücker relations, pencils;
//! - [`symmetry`]: the diagonal groups acting on a pencil and their invariant
//!   monomials;
//! - [`pointcount`]: Schubert-cell enumeration of 𝔽_p-points;
//! - [`periods`]: the period expansion for G(2,4), Hasse-Witt values and the
//!   hypergeometric truncation search;
//! - [`griffiths`]: graded pieces of Jacobian rings and their invariant parts.

pub mod error;
pub mod exact;
pub mod grassmann;
pub mod griffiths;
pub mod periods;
pub mod pointcount;
pub mod symmetry;

pub use error::{Error, Result};
