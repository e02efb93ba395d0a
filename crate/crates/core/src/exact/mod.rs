//! Exact arithmetic: scalars in ℚ or 𝔽_p, sparse Laurent polynomials and
//! sparse linear algebra.

mod field;
mod matrix;
pub mod modular;
mod poly;

pub use field::{Field, Scalar};
pub use matrix::{independent_extension, quotient_dimension, rank, EchelonBasis, SparseMatrix, SparseRow};
pub use poly::{
    grlex_cmp, monomials_of_degree, poly_arith, sort_canonical, ExponentVector, PolyOp, SparsePolynomial,
};
