//! Degree-2 q-Bernoulli numbers `beta*_{n,k,q}` and polynomials
//! `beta*_{n,k,q}(k)` for even `n`.
//!
//! They are the Taylor coefficients (in `t^n/n!`) of
//!
//! ```text
//! F*(t)   = -t sum_{j>=0} q^(k-j) [j]_{q^2}   exp(t [j]_q   q^((k-j)/2))
//! F*(t;k) = -t sum_{j>=0} q^(-j)  [j+k]_{q^2} exp(t [j+k]_q q^(-j/2))
//! ```
//!
//! where each divergent geometric sum `sum_j x^j` is read as `1/(1 - x)`.
//! Two independent routes are provided: the closed forms
//! ([`beta_star`], [`beta_star_poly`]) and a summation oracle
//! ([`beta_star_oracle`], [`beta_star_poly_oracle`]) that expands the
//! summand as an exponential sum in `j` and regularizes term by term.
//!
//! The closed form for the polynomials carries the prefactor
//! `1/([2]_q (1-q)^n)`. The form with `(1-q)^(n-1)` is available as
//! [`beta_star_poly_as_printed`]; it is `(1 - q)` times the oracle value.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QbkError, Result};
use crate::qcore::q_int_poly;
use crate::{rat, HalfPowerPoly, QRatio, Rational};

/// An even order `n >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenOrder(u32);

impl EvenOrder {
    pub fn new(n: i64) -> Result<Self> {
        if n % 2 != 0 {
            return Err(QbkError::OddOrder(n));
        }
        if n < 2 {
            return Err(QbkError::InvalidParameter(format!("order n = {n} must be at least 2")));
        }
        Ok(EvenOrder(n as u32))
    }

    pub fn get(self) -> i64 {
        self.0 as i64
    }
}

fn check_k(k: i64) -> Result<i64> {
    if k < 1 {
        return Err(QbkError::InvalidParameter(format!("parameter k = {k} must be positive")));
    }
    Ok(k)
}

fn binomial(n: i64, m: i64) -> i64 {
    (0..m).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `beta*_{0,k,q}`: the generating functions start at `t^1`, so this is 0.
pub fn beta_star_order_zero() -> QRatio {
    QRatio::zero()
}

fn one_minus_q_pow(n: i64) -> QRatio {
    QRatio::one_minus_p_pow(2).checked_pow(n as i32).expect("positive power")
}

/// q-Bernoulli number `beta*_{n,k,q}` from its closed form:
///
/// ```text
/// (1/(1-q))^n sum_{m=0}^{n} C(n,m) (-1)^m m q^((n-1)(k-1)/2 + k + m - 2)
///     / ((1 - q^(m - (n-1)/2 - 2)) (1 - q^(m - (n-1)/2)))
/// ```
///
/// For even `n` both denominator exponents are half-integers, so no factor vanishes.
pub fn beta_star(n: i64, k: i64) -> Result<QRatio> {
    let n = EvenOrder::new(n)?.get();
    let k = check_k(k)?;
    let mut sum = QRatio::zero();
    for m in 1..=n {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let coeff = rat(sign * binomial(n, m) * m);
        let power = QRatio::p_pow((n - 1) * (k - 1) + 2 * k + 2 * m - 4);
        let den = &QRatio::one_minus_p_pow(2 * m - (n - 1) - 4) * &QRatio::one_minus_p_pow(2 * m - (n - 1));
        sum = sum + (&power / &den).scale(&coeff);
    }
    sum.checked_div(&one_minus_q_pow(n))
}

/// `sum_{m=0}^{n} C(n,m) (-1)^m (m q^(k(m-1))/(1 - q^(m-(n-1)/2-2)) - m q^(k(m+1))/(1 - q^(m-(n-1)/2)))`
fn polynomial_closed_sum(n: i64, k: i64) -> QRatio {
    let mut sum = QRatio::zero();
    for m in 1..=n {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let coeff = rat(sign * binomial(n, m) * m);
        let first = &QRatio::q_pow(k * (m - 1)) / &QRatio::one_minus_p_pow(2 * m - (n - 1) - 4);
        let second = &QRatio::q_pow(k * (m + 1)) / &QRatio::one_minus_p_pow(2 * m - (n - 1));
        sum = sum + (first - second).scale(&coeff);
    }
    sum
}

fn q_int_two() -> QRatio {
    QRatio::from_poly(q_int_poly(2).expect("nonnegative index"))
}

/// q-Bernoulli polynomial `beta*_{n,k,q}(k)` from its closed form with
/// prefactor `1/([2]_q (1-q)^n)`.
pub fn beta_star_poly(n: i64, k: i64) -> Result<QRatio> {
    let n = EvenOrder::new(n)?.get();
    let k = check_k(k)?;
    polynomial_closed_sum(n, k).checked_div(&(&q_int_two() * &one_minus_q_pow(n)))
}

/// The closed form for `beta*_{n,k,q}(k)` with prefactor `1/([2]_q (1-q)^(n-1))`.
///
/// Kept for comparison only: it differs from the generating-function value by
/// the factor `1 - q`.
pub fn beta_star_poly_as_printed(n: i64, k: i64) -> Result<QRatio> {
    let n = EvenOrder::new(n)?.get();
    let k = check_k(k)?;
    polynomial_closed_sum(n, k).checked_div(&(&q_int_two() * &one_minus_q_pow(n - 1)))
}

/// A finite exponential sum in the summation index `j`:
/// `sum_e c_e * (p^e)^j`, keyed by the p-exponent `e` per unit of `j`.
///
/// Coefficients are Laurent polynomials; callers keep any common denominator
/// aside, which avoids a gcd per term update.
#[derive(Clone, Debug, Default)]
struct ExpSum {
    terms: BTreeMap<i64, HalfPowerPoly>,
}

impl ExpSum {
    fn single(rate: i64, coeff: HalfPowerPoly) -> Self {
        let mut s = ExpSum::default();
        s.add_term(rate, coeff);
        s
    }

    fn one() -> Self {
        Self::single(0, HalfPowerPoly::one())
    }

    fn add_term(&mut self, rate: i64, coeff: HalfPowerPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(rate).or_insert_with(HalfPowerPoly::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&rate);
        }
    }

    fn mul(&self, rhs: &ExpSum) -> ExpSum {
        let mut out = ExpSum::default();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &rhs.terms {
                out.add_term(ra + rb, ca * cb);
            }
        }
        out
    }

    fn pow(&self, e: u32) -> ExpSum {
        (0..e).fold(ExpSum::one(), |acc, _| acc.mul(self))
    }

    /// `sum_{j>=0} self(j)` with `sum_j x^j := 1/(1-x)`.
    fn regularized_total(&self) -> Result<QRatio> {
        let mut total = QRatio::zero();
        for (rate, coeff) in &self.terms {
            if *rate == 0 {
                return Err(QbkError::SingularRegularization);
            }
            total = total + QRatio::from_poly(coeff.clone()).checked_div(&QRatio::one_minus_p_pow(*rate))?;
        }
        Ok(total)
    }
}

/// `lead x^j - 1` as an exponential sum: the numerator of every q-integer in `j`.
fn affine_in_j(rate: i64, lead: HalfPowerPoly) -> ExpSum {
    let mut s = ExpSum::single(rate, lead);
    s.add_term(0, -HalfPowerPoly::one());
    s
}

/// Which generating function a coefficient is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaKind {
    /// `beta*_{n,k,q}` from `F*(t)`
    Number,
    /// `beta*_{n,k,q}(k)` from `F*(t;k)`
    Polynomial,
}

impl fmt::Display for BetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetaKind::Number => "number",
            BetaKind::Polynomial => "polynomial",
        })
    }
}

/// Numerators of the weight `w(j)` and exponent argument `g(j)` of
/// `F = -t sum_j w(j) exp(t g(j))`; the denominators are `q^2 - 1` and `q - 1`.
fn generating_parts(kind: BetaKind, k: i64) -> (ExpSum, ExpSum) {
    match kind {
        BetaKind::Number => {
            // q^(k-j) [j]_{q^2}
            let weight = ExpSum::single(-2, HalfPowerPoly::q_pow(k)).mul(&affine_in_j(4, HalfPowerPoly::one()));
            // [j]_q q^((k-j)/2)
            let arg = ExpSum::single(-1, HalfPowerPoly::p_pow(k)).mul(&affine_in_j(2, HalfPowerPoly::one()));
            (weight, arg)
        }
        BetaKind::Polynomial => {
            // q^(-j) [j+k]_{q^2}
            let weight = ExpSum::single(-2, HalfPowerPoly::one()).mul(&affine_in_j(4, HalfPowerPoly::q_pow(2 * k)));
            // [j+k]_q q^(-j/2)
            let arg = ExpSum::single(-1, HalfPowerPoly::one()).mul(&affine_in_j(2, HalfPowerPoly::q_pow(k)));
            (weight, arg)
        }
    }
}

/// `n!`-normalized coefficient of `t^n` in the regularized generating function,
/// for any order `n >= 1`.
///
/// `-t sum_j w(j) exp(t g(j))` has `t^n/n!` coefficient `-n sum_j w(j) g(j)^(n-1)`.
/// A surviving term with ratio `x = 1` has no regularized value and is
/// reported as [`QbkError::SingularRegularization`]; for the two generating
/// functions here such terms cancel, and odd orders give nonzero values.
pub fn regularized_coefficient(kind: BetaKind, n: i64, k: i64) -> Result<QRatio> {
    if n < 1 {
        return Err(QbkError::InvalidParameter(format!("order n = {n} must be positive")));
    }
    let k = check_k(k)?;
    let (weight, arg) = generating_parts(kind, k);
    let summand = weight.mul(&arg.pow((n - 1) as u32));
    let den = &(QRatio::p_pow(4) - QRatio::one()) * &(QRatio::p_pow(2) - QRatio::one()).checked_pow((n - 1) as i32)?;
    summand.regularized_total()?.scale(&rat(-n)).checked_div(&den)
}

/// `beta*_{n,k,q}` computed from the generating function by regularized summation.
pub fn beta_star_oracle(n: i64, k: i64) -> Result<QRatio> {
    let n = EvenOrder::new(n)?.get();
    regularized_coefficient(BetaKind::Number, n, k)
}

/// `beta*_{n,k,q}(k)` computed from the generating function by regularized summation.
pub fn beta_star_poly_oracle(n: i64, k: i64) -> Result<QRatio> {
    let n = EvenOrder::new(n)?.get();
    regularized_coefficient(BetaKind::Polynomial, n, k)
}

/// Exact `q -> 1` limit of the selected value.
pub fn beta_limit_q1(n: i64, k: i64, kind: BetaKind) -> Result<Rational> {
    let value = match kind {
        BetaKind::Number => beta_star(n, k)?,
        BetaKind::Polynomial => beta_star_poly(n, k)?,
    };
    value.limit_at_one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

/// A computed q-Bernoulli value with its parameters and provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaResult {
    pub n: i64,
    pub k: i64,
    pub kind: BetaKind,
    pub method: Method,
    pub value: QRatio,
}

impl BetaResult {
    pub fn compute(kind: BetaKind, method: Method, n: i64, k: i64) -> Result<Self> {
        let value = match (kind, method) {
            (BetaKind::Number, Method::ClosedForm) => beta_star(n, k)?,
            (BetaKind::Number, Method::Oracle) => beta_star_oracle(n, k)?,
            (BetaKind::Polynomial, Method::ClosedForm) => beta_star_poly(n, k)?,
            (BetaKind::Polynomial, Method::Oracle) => beta_star_poly_oracle(n, k)?,
        };
        Ok(BetaResult { n, k, kind, method, value })
    }
}

impl Serialize for BetaResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BetaResult", 5)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("method", &self.method)?;
        s.serialize_field("value", &self.value.to_string())?;
        s.end()
    }
}
