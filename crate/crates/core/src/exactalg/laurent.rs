//! Laurent polynomials in `p`, where `p^2 = q`.
//!
//! A value is stored densely as `p^low * (c_0 + c_1 p + ... + c_d p^d)` with
//! `c_0 != 0` and `c_d != 0`. The zero polynomial has no coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use crate::error::{QbkError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<C> {
    low: i64,
    coeffs: Vec<C>,
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    /// `c * p^exp`
    pub fn monomial(c: C, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// `p^exp`
    pub fn p_pow(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    /// `q^exp`, i.e. `p^(2 exp)`
    pub fn q_pow(exp: i64) -> Self {
        Self::p_pow(2 * exp)
    }

    /// Builds `p^low * sum coeffs[i] p^i`, trimming zero coefficients at both ends.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly { low: low + lead as i64, coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        let (Some(&low), Some(&high)) = (map.keys().next(), map.keys().next_back()) else {
            return Self::zero();
        };
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (e, c) in map {
            coeffs[(e - low) as usize] = c;
        }
        Self::from_coeffs(low, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True when the polynomial is a nonzero constant `c * p^0`.
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `p^exp`.
    pub fn coeff(&self, exp: i64) -> C {
        let idx = exp - self.low;
        if idx < 0 {
            return C::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient at the lowest exponent.
    pub fn lowest_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Coefficient at the highest exponent.
    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// True when every exponent is even, i.e. the value is a Laurent polynomial in `q`.
    pub fn has_only_even_exponents(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `p^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + exp, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `p -> p^factor`; used to build `[k]_{q^m}` from `[k]_q`.
    pub fn substitute_power(&self, factor: i64) -> Self {
        assert!(factor > 0, "substitution factor must be positive");
        Self::from_terms(self.terms().map(|(e, c)| (e * factor, c.clone())))
    }

    /// Splits off the monomial factor: `self = p^low * dense`, `dense(0) != 0`.
    pub(crate) fn split(&self) -> (i64, &[C]) {
        (self.low, &self.coeffs)
    }

    pub(crate) fn into_split(self) -> (i64, Vec<C>) {
        (self.low, self.coeffs)
    }

    /// Evaluates at `p = value`. Returns `None` for `value = 0` with negative exponents.
    pub fn eval(&self, value: &C) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        let dense = horner(&self.coeffs, value);
        scalar_pow(value, self.low).map(|m| dense * m)
    }

    /// Exact quotient `self / divisor` when the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (quot, rem) = dense_div_rem(&self.coeffs, &divisor.coeffs);
        rem.is_empty()
            .then(|| Self::from_coeffs(self.low - divisor.low, quot))
    }
}

/// Greatest common divisor of two Laurent polynomials.
///
/// Monomials are units, so the result is normalized to lowest exponent 0
/// and made monic (highest coefficient 1).
pub fn poly_gcd<C: Scalar>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
    if a.is_zero() && b.is_zero() {
        return Err(QbkError::BothZero);
    }
    Ok(LaurentPoly::from_coeffs(0, dense_gcd(&a.coeffs, &b.coeffs)))
}

pub(crate) fn horner<C: Scalar>(coeffs: &[C], x: &C) -> C {
    coeffs
        .iter()
        .rev()
        .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub(crate) fn scalar_pow<C: Scalar>(x: &C, e: i64) -> Option<C> {
    if e < 0 && x.is_zero() {
        return None;
    }
    let base = if e < 0 { C::one() / x.clone() } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut b = base;
    let mut acc = C::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * b.clone();
        }
        n >>= 1;
        if n > 0 {
            b = b.clone() * b;
        }
    }
    Some(acc)
}

fn trim<C: Scalar>(v: &mut Vec<C>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Ordinary polynomial long division on ascending coefficient vectors.
pub(crate) fn dense_div_rem<C: Scalar>(num: &[C], den: &[C]) -> (Vec<C>, Vec<C>) {
    let mut rem: Vec<C> = num.to_vec();
    trim(&mut rem);
    let dlen = den.len();
    assert!(dlen > 0, "division by zero polynomial");
    if rem.len() < dlen {
        return (Vec::new(), rem);
    }
    let lead = den[dlen - 1].clone();
    let mut quot = vec![C::zero(); rem.len() - dlen + 1];
    while rem.len() >= dlen {
        let shift = rem.len() - dlen;
        let factor = rem[rem.len() - 1].clone() / lead.clone();
        for (i, d) in den.iter().enumerate() {
            if !d.is_zero() {
                rem[shift + i] = rem[shift + i].clone() - factor.clone() * d.clone();
            }
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn make_monic<C: Scalar>(v: &mut [C]) {
    if let Some(lead) = v.last().cloned() {
        if !lead.is_one() {
            for c in v.iter_mut() {
                *c = c.clone() / lead.clone();
            }
        }
    }
}

/// Monic gcd of two dense polynomials (ascending coefficients, not both zero).
///
/// Inputs are expected to have nonzero constant terms (as produced by
/// [`LaurentPoly::split`]), so the result has a nonzero constant term too.
pub(crate) fn dense_gcd<C: Scalar>(a: &[C], b: &[C]) -> Vec<C> {
    let (mut x, mut y) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        make_monic(&mut y);
        if y.len() == 1 {
            return y;
        }
        let (_, r) = dense_div_rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    make_monic(&mut x);
    x
}

impl<C: Scalar> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut out = vec![C::zero(); (high - low + 1) as usize];
        for (src, off) in [(self, self.low - low), (rhs, rhs.low - low)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let slot = &mut out[off as usize + i];
                *slot = slot.clone() + c.clone();
            }
        }
        LaurentPoly::from_coeffs(low, out)
    }
}

impl<C: Scalar> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, out)
    }
}

impl<C: Scalar> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Scalar> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Scalar> std::iter::Sum for LaurentPoly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}
