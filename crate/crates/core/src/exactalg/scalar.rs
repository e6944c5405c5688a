use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient type for the polynomial kernel.
///
/// Any field-like numeric type works for ring arithmetic and evaluation.
/// Canonicalization of ratios (gcd, exact division) is only meaningful for
/// exact fields such as [`crate::Rational`] or `Ratio<i64>`; with `f64` the
/// zero tests are exact comparisons and results are not reliable.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable in scalar type")
    }
}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> + FromPrimitive {}
