//! Exact computation of degree-2 q-Bernoulli numbers and polynomials, sums of
//! powers of q-integers, and the surrounding q-identities.
//!
//! All q-objects live in the field of rational functions in `p`, where
//! `p^2 = q`, so half-integer powers of `q` are represented exactly. The
//! arithmetic kernel in [`exactalg`] is generic over the coefficient type;
//! the aliases below fix it to arbitrary-precision rationals.

pub mod classical;
pub mod error;
pub mod exactalg;
pub mod qbernoulli;
pub mod qcore;
pub mod qsums;
pub mod qzeta;

pub use error::{QbkError, Result};
pub use exactalg::{poly_gcd, LaurentPoly, RationalFunction, Scalar};

/// Arbitrary-precision exact rational number.
pub type Rational = num_rational::BigRational;
/// Laurent polynomial in `p = q^(1/2)` with exact rational coefficients.
pub type HalfPowerPoly = LaurentPoly<Rational>;
/// Element of `Q(q^(1/2))` in canonical reduced form.
pub type QRatio = RationalFunction<Rational>;

/// Fixed-width rational coefficients; adequate for small degrees only.
pub type Rational64 = num_rational::Rational64;
pub type HalfPowerPoly64 = LaurentPoly<Rational64>;
pub type QRatio64 = RationalFunction<Rational64>;

/// Floating-point Laurent polynomials, for numeric evaluation only.
pub type HalfPowerPolyF64 = LaurentPoly<f64>;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
