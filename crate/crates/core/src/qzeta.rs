//! q-zeta series and their special values at negative odd arguments.
//!
//! Two series are evaluated numerically, in exact rationals:
//!
//! ```text
//! shifted: Z(s;k) = sum_{n>=0} [n+k]_{q^2} q^(-n(s+2)/2) / [n+k]_q^s
//! plain:   Z(s)   = sum_{n>=1} [n]_{q^2}   q^((k-n)(2-s)/2) / [n]_q^s
//! ```
//!
//! For `0 < q < 1` the factor `q^(-n(s+2)/2)` grows without bound, so both
//! series are only evaluated for `q > 1`. There the consecutive-term ratio
//! from q-integer index `m` on is at most `rho_m = ([m+1]_{q^2} / [m]_{q^2}) c`
//! with `c = q^(-(3s+2)/2)` (shifted) or `c = q^(-(s+2)/2)` (plain), using
//! `[m]_q / [m+1]_q < 1/q`. `rho_m` decreases to `q^(1 - 3s/2)` and
//! `q^(1 - s/2)` respectively. Summation stops at the
//! first term `T` with `T rho / (1 - rho) < tolerance`; since all terms are
//! positive, the returned partial sum is within `tolerance` below the limit.
//!
//! [`zeta_special`] is the special-value formula `Z(1-n) = -beta*_n / n`,
//! taken as a definition; no analytic continuation is computed.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QbkError, Result};
use crate::exactalg::rational_sqrt;
use crate::qbernoulli::{beta_star, EvenOrder};
use crate::{QRatio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaVariant {
    Shifted,
    Plain,
}

impl fmt::Display for ZetaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZetaVariant::Shifted => "shifted",
            ZetaVariant::Plain => "plain",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaQuery {
    pub s: Rational,
    pub q_value: Rational,
    pub k: i64,
    pub tolerance: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaResult {
    pub value: Rational,
    pub terms_used: usize,
}

/// Serializable record of one evaluated query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaRecord {
    pub variant: String,
    pub s: String,
    pub q: String,
    pub k: i64,
    pub tolerance: String,
    pub value: String,
    pub terms_used: usize,
}

impl ZetaRecord {
    pub fn new(query: &ZetaQuery, variant: ZetaVariant, result: &ZetaResult) -> Self {
        ZetaRecord {
            variant: variant.to_string(),
            s: query.s.to_string(),
            q: query.q_value.to_string(),
            k: query.k,
            tolerance: query.tolerance.to_string(),
            value: result.value.to_string(),
            terms_used: result.terms_used,
        }
    }
}

/// Exact powers `q^(e/2)` for a fixed rational `q`.
struct HalfPowers {
    q: Rational,
    root: Option<Rational>,
}

impl HalfPowers {
    fn new(q: &Rational) -> Self {
        HalfPowers { q: q.clone(), root: rational_sqrt(q) }
    }

    fn get(&self, e2: i64) -> Result<Rational> {
        if e2 % 2 == 0 {
            return Ok(pow(&self.q, e2 / 2));
        }
        match &self.root {
            Some(p) => Ok(pow(p, e2)),
            None => Err(QbkError::IrrationalTerm(format!(
                "q^({e2}/2) with q = {} is not rational",
                self.q
            ))),
        }
    }
}

fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// `[m]_{x}` evaluated at a rational `x`.
fn q_int_at(m: i64, x: &Rational) -> Rational {
    (pow(x, m) - Rational::one()) / (x - Rational::one())
}

fn integer_s(s: &Rational) -> Result<i64> {
    if !s.is_integer() {
        return Err(QbkError::IrrationalTerm(format!("non-integer s = {s}")));
    }
    s.to_integer()
        .to_i64()
        .ok_or_else(|| QbkError::InvalidParameter(format!("s = {s} out of range")))
}

fn validate(query: &ZetaQuery) -> Result<i64> {
    if !query.tolerance.is_positive() {
        return Err(QbkError::InvalidParameter("tolerance must be positive".into()));
    }
    if query.q_value <= Rational::one() {
        return Err(QbkError::InvalidParameter(format!(
            "q = {} must exceed 1 for the series to converge",
            query.q_value
        )));
    }
    if query.k < 1 {
        return Err(QbkError::InvalidParameter(format!("k = {} must be positive", query.k)));
    }
    integer_s(&query.s)
}

/// Asymptotic term ratio `q^(1 - 3s/2)` (shifted) or `q^(1 - s/2)` (plain),
/// as the exponent of `q^(1/2)`.
fn limiting_ratio_exponent(variant: ZetaVariant, s: i64) -> i64 {
    match variant {
        ZetaVariant::Shifted => 2 - 3 * s,
        ZetaVariant::Plain => 2 - s,
    }
}

/// Truncated evaluation of the selected q-zeta series.
pub fn zeta_series(query: &ZetaQuery, variant: ZetaVariant) -> Result<ZetaResult> {
    let s = validate(query)?;
    let powers = HalfPowers::new(&query.q_value);
    let q = &query.q_value;
    let q2 = q * q;

    // Divergence is decided on the exact exponent; q > 1 makes the sign decisive.
    let limit_exp = limiting_ratio_exponent(variant, s);
    if limit_exp >= 0 || s <= 0 {
        let shown = format!("q^({limit_exp}/2)");
        return Err(QbkError::DivergentParameters(shown));
    }

    // rho_m = ([m+1]_{q^2} / [m]_{q^2}) * step
    let step = match variant {
        ZetaVariant::Shifted => powers.get(-(3 * s + 2))?,
        ZetaVariant::Plain => powers.get(-(s + 2))?,
    };
    let k = query.k;
    let (first, index_of): (i64, Box<dyn Fn(i64) -> i64>) = match variant {
        ZetaVariant::Shifted => (0, Box::new(move |n| n + k)),
        ZetaVariant::Plain => (1, Box::new(|n| n)),
    };
    let weight = |n: i64| -> Result<Rational> {
        match variant {
            ZetaVariant::Shifted => powers.get(-n * (s + 2)),
            ZetaVariant::Plain => powers.get((k - n) * (2 - s)),
        }
    };

    let mut total = Rational::zero();
    let mut terms_used = 0usize;
    let mut n = first;
    loop {
        let m = index_of(n);
        let term = q_int_at(m, &q2) * weight(n)? / pow(&q_int_at(m, q), s);
        total += &term;
        terms_used += 1;
        let rho = q_int_at(m + 1, &q2) / q_int_at(m, &q2) * &step;
        if rho < Rational::one() {
            let tail = &term * &rho / (Rational::one() - &rho);
            if tail < query.tolerance {
                break;
            }
        }
        n += 1;
    }
    Ok(ZetaResult { value: total, terms_used })
}

/// `Z(1 - n) = -beta*_{n,k,q} / n`.
pub fn zeta_special(n: i64, k: i64) -> Result<QRatio> {
    let n = EvenOrder::new(n)?.get();
    Ok(-beta_star(n, k)?.scale(&Rational::new(1.into(), n.into())))
}

/// Decimal approximation of an exact rational, for human-readable output.
pub fn approx(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn query(s: i64, q: i64, k: i64, tol: Rational) -> ZetaQuery {
        ZetaQuery { s: r(s, 1), q_value: r(q, 1), k, tolerance: tol }
    }

    #[test]
    fn first_shifted_term_is_one() {
        // a huge tolerance stops after the n = 0 term
        let res = zeta_series(&query(3, 4, 1, r(1000, 1)), ZetaVariant::Shifted).unwrap();
        assert_eq!(res.terms_used, 1);
        assert_eq!(res.value, r(1, 1));
    }

    #[test]
    fn rejects_bad_parameters() {
        let bad_q = ZetaQuery { q_value: r(1, 2), ..query(3, 4, 1, r(1, 100)) };
        assert!(matches!(zeta_series(&bad_q, ZetaVariant::Shifted), Err(QbkError::InvalidParameter(_))));
        assert!(matches!(
            zeta_series(&query(2, 4, 1, r(1, 100)), ZetaVariant::Plain),
            Err(QbkError::DivergentParameters(_))
        ));
        assert!(matches!(
            zeta_series(&query(0, 4, 1, r(1, 100)), ZetaVariant::Shifted),
            Err(QbkError::DivergentParameters(_))
        ));
        let half = ZetaQuery { s: r(7, 2), ..query(3, 4, 1, r(1, 100)) };
        assert!(matches!(zeta_series(&half, ZetaVariant::Shifted), Err(QbkError::IrrationalTerm(_))));
        // s = 3 needs q^(1/2)
        assert!(matches!(
            zeta_series(&query(3, 2, 1, r(1, 100)), ZetaVariant::Shifted),
            Err(QbkError::IrrationalTerm(_))
        ));
        assert!(matches!(zeta_series(&query(3, 4, 1, r(0, 1)), ZetaVariant::Shifted), Err(QbkError::InvalidParameter(_))));
    }

    #[test]
    fn even_s_works_for_non_square_q() {
        let res = zeta_series(&query(4, 2, 1, r(1, 1_000_000)), ZetaVariant::Plain).unwrap();
        assert!(res.terms_used > 1);
    }

    #[test]
    fn special_value_scaling() {
        for (n, k) in [(2, 1), (4, 2)] {
            let z = zeta_special(n, k).unwrap();
            assert!((z.scale(&r(n, 1)) + beta_star(n, k).unwrap()).is_zero());
        }
        assert_eq!(zeta_special(3, 1), Err(QbkError::OddOrder(3)));
    }
}
