//! Real algebraic numbers: integer polynomials, Sturm root counting, lattice
//! reduction, and reconstruction of minimal polynomials from approximations.

mod kll;
mod lll;
mod number;
mod poly;

pub use kll::{min_poly_from_approx, precision_s};
pub use lll::lll_reduce;
pub use number::{isolate_root, refine, AlgebraicNumber};
pub use poly::{IntPolynomial, Sturm};
