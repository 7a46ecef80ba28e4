//! Polynomials, monomials and linear algebra over GF(2).

pub mod bits;
pub mod monomial;
pub mod poly;

pub use bits::{intersection_basis, intersection_dim, BitMatrix, BitVec, Span};
pub use monomial::{enumerate_slice, monomials_by_length, monomials_of_degree, visit_ascending, DegreeSlice, Flavor, Monomial};
pub use poly::{parse_polynomial, F2Polynomial};
