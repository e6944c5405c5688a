//! Reduced ratios of Laurent polynomials: elements of `Q(p)` with `p^2 = q`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::laurent::{dense_div_rem, dense_gcd, horner, LaurentPoly};
use super::scalar::Scalar;
use crate::error::{QbkError, Result};

/// A ratio `num / den` kept in canonical form.
///
/// Canonical form: `gcd(num, den) = 1`, `den` has lowest exponent 0 and
/// lowest-degree coefficient exactly 1, and zero is `0 / 1`. Two values are
/// equal exactly when their canonical forms are identical, so `PartialEq`
/// is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction<C> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(QbkError::DivisionByZero);
        }
        Ok(Self::canonicalize(num, den))
    }

    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        RationalFunction { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    /// `p^exp`
    pub fn p_pow(exp: i64) -> Self {
        Self::from_poly(LaurentPoly::p_pow(exp))
    }

    /// `q^exp = p^(2 exp)`
    pub fn q_pow(exp: i64) -> Self {
        Self::p_pow(2 * exp)
    }

    /// `1 - p^exp`, the factor shape that fills the closed forms.
    pub fn one_minus_p_pow(exp: i64) -> Self {
        Self::from_poly(&LaurentPoly::one() - &LaurentPoly::p_pow(exp))
    }

    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The polynomial this ratio equals, if its canonical denominator is 1.
    pub fn as_polynomial(&self) -> Option<&LaurentPoly<C>> {
        self.den.is_one().then_some(&self.num)
    }

    /// Re-runs canonicalization; a no-op on values built through this API.
    pub fn canonical(&self) -> Self {
        Self::canonicalize(self.num.clone(), self.den.clone())
    }

    fn canonicalize(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (nlow, mut n) = num.into_split();
        let (dlow, mut d) = den.into_split();
        if d.len() > 1 && n.len() > 1 {
            let g = dense_gcd(&n, &d);
            if g.len() > 1 {
                n = dense_div_rem(&n, &g).0;
                d = dense_div_rem(&d, &g).0;
            }
        }
        let unit = d[0].clone();
        if !unit.is_one() {
            n = n.into_iter().map(|c| c / unit.clone()).collect();
            d = d.into_iter().map(|c| c / unit.clone()).collect();
        }
        RationalFunction {
            num: LaurentPoly::from_coeffs(nlow - dlow, n),
            den: LaurentPoly::from_coeffs(0, d),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QbkError::DivisionByZero);
        }
        Ok(Self::canonicalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn checked_pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        // gcd(a, b) = 1 implies gcd(a^k, b^k) = 1, so powering stays canonical
        // up to the denominator's unit, which is already 1.
        Ok(RationalFunction {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplies by `p^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        RationalFunction { num: self.num.shift(exp), den: self.den.clone() }
    }

    /// Evaluates at `p = value`.
    pub fn eval_p(&self, value: &C) -> Result<C> {
        let den = self.den.eval(value).ok_or(QbkError::PoleAtPoint)?;
        if den.is_zero() {
            return Err(QbkError::PoleAtPoint);
        }
        let num = self.num.eval(value).ok_or(QbkError::PoleAtPoint)?;
        Ok(num / den)
    }

    /// Exact limit as `q -> 1` (equivalently `p -> 1`).
    ///
    /// Cancels `(p - 1)` factors by synthetic division until the
    /// denominator no longer vanishes at 1, then evaluates.
    pub fn limit_at_one(&self) -> Result<C> {
        if self.is_zero() {
            return Ok(C::zero());
        }
        let one = C::one();
        let (_, n) = self.num.split();
        let (_, d) = self.den.split();
        let (mut n, mut d) = (n.to_vec(), d.to_vec());
        while horner(&d, &one).is_zero() {
            if !horner(&n, &one).is_zero() {
                return Err(QbkError::PoleAtOne);
            }
            d = synthetic_div_by_p_minus_one(&d);
            n = synthetic_div_by_p_minus_one(&n);
        }
        // the monomial factor p^low is 1 at p = 1
        Ok(horner(&n, &one) / horner(&d, &one))
    }
}

/// Quotient of `poly / (p - 1)` for a polynomial with `poly(1) = 0`.
fn synthetic_div_by_p_minus_one<C: Scalar>(poly: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); poly.len().saturating_sub(1)];
    let mut carry = C::zero();
    for i in (1..poly.len()).rev() {
        carry = carry + poly[i].clone();
        out[i - 1] = carry.clone();
    }
    out
}

/// `Some(r)` when `x = r^2` for a nonnegative rational `r`.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(root(x.numer())?, root(x.denom())?))
}

impl RationalFunction<BigRational> {
    /// Evaluates at `q = q_value`.
    ///
    /// Odd powers of `p` need `q_value` to be a rational square; values with
    /// only even exponents are evaluated directly in `q`.
    pub fn eval_q(&self, q_value: &BigRational) -> Result<BigRational> {
        if !q_value.is_positive() {
            return Err(QbkError::NonPositiveQ(q_value.to_string()));
        }
        if self.num.has_only_even_exponents() && self.den.has_only_even_exponents() {
            let halve = |p: &LaurentPoly<BigRational>| {
                LaurentPoly::from_terms(p.terms().map(|(e, c)| (e / 2, c.clone())))
            };
            let halved = RationalFunction { num: halve(&self.num), den: halve(&self.den) };
            return halved.eval_p(q_value);
        }
        let p = rational_sqrt(q_value)
            .ok_or_else(|| QbkError::OddExponent(q_value.to_string()))?;
        self.eval_p(&p)
    }
}

impl<C: Scalar> Add for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn add(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::canonicalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::canonicalize(num, &self.den * &rhs.den)
    }
}

impl<C: Scalar> Sub for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn sub(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Mul for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn mul(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::canonicalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<C: Scalar> Div for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.checked_div(rhs).expect("division by the zero ratio")
    }
}

impl<C: Scalar> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn neg(self) -> RationalFunction<C> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl<C: Scalar> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn neg(self) -> RationalFunction<C> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Scalar> $tr for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: RationalFunction<C>) -> RationalFunction<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $tr<&RationalFunction<C>> for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<C: Scalar> From<LaurentPoly<C>> for RationalFunction<C> {
    fn from(p: LaurentPoly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Scalar> std::iter::Sum for RationalFunction<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<C: Scalar> std::iter::Product for RationalFunction<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl<C: Scalar> Zero for RationalFunction<C> {
    fn zero() -> Self {
        RationalFunction::zero()
    }

    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}
