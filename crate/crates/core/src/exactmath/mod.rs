//! Exact scalars, polynomials and matrices.

mod coeff;
mod matrix;
mod poly;
mod roots;
mod rref;
mod scalar;

pub use coeff::Coeff;
pub use matrix::{DenseMatrix, Matrix};
pub use poly::{poly_gcd_cofactors, Poly1, Poly2, PolyError};
pub use roots::{char_poly, split_roots, NonSplit};
pub use rref::{rref_ordered, try_rref_ordered, try_rref_ordered_sparse, NonUnitPivot, TriangularSolution};
pub use scalar::{Field, Scalar};
