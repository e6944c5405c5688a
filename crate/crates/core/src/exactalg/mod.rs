//! Exact arithmetic kernel: Laurent polynomials in `p = q^(1/2)` and their
//! reduced ratios, generic over the coefficient field.

mod laurent;
mod ratio;
mod render;
mod scalar;

pub use laurent::{poly_gcd, LaurentPoly};
pub use ratio::{rational_sqrt, RationalFunction};
pub use scalar::Scalar;
