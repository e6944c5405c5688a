//! q-integers (integer, half-integer and `q^m`-base) and Gaussian binomials.

use crate::error::{QbkError, Result};
use crate::exactalg::{LaurentPoly, RationalFunction, Scalar};

/// Index `a` of a q-integer `[a]_q`, stored as `2a` so half-integers are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QIndex {
    twice_index: i64,
}

impl QIndex {
    /// `a = twice_index / 2`; negative indices are rejected.
    pub fn from_twice(twice_index: i64) -> Result<Self> {
        if twice_index < 0 {
            return Err(QbkError::NegativeIndex(twice_index));
        }
        Ok(QIndex { twice_index })
    }

    pub fn integer(a: i64) -> Result<Self> {
        Self::from_twice(2 * a)
    }

    /// `a + 1/2`
    pub fn half_above(a: i64) -> Result<Self> {
        Self::from_twice(2 * a + 1)
    }

    pub fn twice(self) -> i64 {
        self.twice_index
    }

    pub fn is_integer(self) -> bool {
        self.twice_index % 2 == 0
    }
}

/// `1 + x + ... + x^(len-1)` where `x = p^step`.
fn geometric<C: Scalar>(len: i64, step: i64) -> LaurentPoly<C> {
    let len = len.max(0) as usize;
    let mut coeffs = vec![C::zero(); if len == 0 { 0 } else { (len - 1) * step as usize + 1 }];
    for i in 0..len {
        coeffs[i * step as usize] = C::one();
    }
    LaurentPoly::from_coeffs(0, coeffs)
}

/// `[a]_q = (q^a - 1)/(q - 1) = (p^(2a) - 1)/(p^2 - 1)`.
pub fn q_int<C: Scalar>(a: QIndex) -> RationalFunction<C> {
    if a.is_integer() {
        return RationalFunction::from_poly(geometric(a.twice() / 2, 2));
    }
    let num = LaurentPoly::p_pow(a.twice()) - LaurentPoly::one();
    let den = LaurentPoly::p_pow(2) - LaurentPoly::one();
    RationalFunction::new(num, den).expect("p^2 - 1 is nonzero")
}

/// `[k]_q` for integer `k >= 0` as a polynomial.
pub fn q_int_poly<C: Scalar>(k: i64) -> Result<LaurentPoly<C>> {
    q_int_base_poly(k, 1)
}

/// `[k]_{q^m} = (q^(mk) - 1)/(q^m - 1)`.
pub fn q_int_base<C: Scalar>(k: i64, m: i64) -> Result<RationalFunction<C>> {
    q_int_base_poly(k, m).map(RationalFunction::from_poly)
}

/// `[k]_{q^m}` as the polynomial `1 + q^m + ... + q^(m(k-1))`.
pub fn q_int_base_poly<C: Scalar>(k: i64, m: i64) -> Result<LaurentPoly<C>> {
    if k < 0 {
        return Err(QbkError::NegativeIndex(2 * k));
    }
    if m < 1 {
        return Err(QbkError::InvalidParameter(format!("base power m = {m} must be positive")));
    }
    Ok(geometric(k, 2 * m))
}

/// Gaussian binomial `[n choose k]_q` via the product
/// `prod_{j=1..k} (1 - q^(n+1-j)) / (1 - q^j)`, reduced after each factor.
pub fn q_binomial<C: Scalar>(n: i64, k: i64) -> LaurentPoly<C> {
    if k < 0 || n < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k);
    let mut acc = RationalFunction::<C>::one();
    for j in 1..=k {
        let factor = RationalFunction::new(
            LaurentPoly::one() - LaurentPoly::q_pow(n + 1 - j),
            LaurentPoly::one() - LaurentPoly::q_pow(j),
        )
        .expect("1 - q^j is nonzero for j >= 1");
        acc = acc * factor;
    }
    acc.as_polynomial()
        .cloned()
        .expect("Gaussian binomial reduces to a polynomial")
}
