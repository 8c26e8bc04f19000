//! Exact arithmetic kernel: rationals, Laurent polynomials, dense matrices
//! over exact and floating scalars, unipotent logarithms.

pub mod laurent;
pub mod matrix;
pub mod numeric;
pub mod unipotent;

pub use laurent::{rat, LaurentPoly, Rational};
pub use matrix::{ExactMatrix, RationalAlgebra, RingElem};
pub use numeric::{bottleneck_matching, eigenvalues, Matching, NumericMatrix};
pub use unipotent::{char_chi, chi_of_log_numeric, nilpotent_exp, unipotent_log, unipotent_log_numeric};
