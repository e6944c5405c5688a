//! Canonical text rendering and parsing.
//!
//! Terms appear in ascending exponent order. A term `c * p^e` renders as `c`
//! when `e = 0`, `c*q^k` when `e = 2k`, and `c*q^(e/2)` when `e` is odd.
//! Terms are joined with ` + ` / ` - `; the zero polynomial renders as `0`.
//! A ratio with denominator 1 renders as its numerator, otherwise as
//! `(num)/(den)`.

use std::fmt::{self, Display};
use std::str::FromStr;

use num_traits::Signed;

use super::laurent::LaurentPoly;
use super::ratio::RationalFunction;
use super::scalar::Scalar;
use crate::error::QbkError;

fn write_power(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result {
    match exp {
        0 => Ok(()),
        e if e % 2 == 0 => write!(f, "*q^{}", e / 2),
        e => write!(f, "*q^({e}/2)"),
    }
}

impl<C: Scalar + Display + Signed> Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, c)) in self.terms().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{}", c.abs())?,
                (0, false) => write!(f, "{c}")?,
                (_, true) => write!(f, " - {}", c.abs())?,
                (_, false) => write!(f, " + {c}")?,
            }
            write_power(f, exp)?;
        }
        Ok(())
    }
}

impl<C: Scalar + Display + Signed> Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), self.den())
        }
    }
}

fn parse_err(input: &str, reason: impl Into<String>) -> QbkError {
    QbkError::Parse { input: input.to_string(), reason: reason.into() }
}

fn parse_exponent(s: &str, whole: &str) -> Result<i64, QbkError> {
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix("/2)")) {
        let e: i64 = inner.parse().map_err(|_| parse_err(whole, "bad half exponent"))?;
        if e % 2 == 0 {
            return Err(parse_err(whole, "half exponent must be odd"));
        }
        return Ok(e);
    }
    let k: i64 = s.parse().map_err(|_| parse_err(whole, "bad exponent"))?;
    Ok(2 * k)
}

fn parse_term<C: Scalar + FromStr>(term: &str, negative: bool, whole: &str) -> Result<(i64, C), QbkError> {
    let (coeff, exp) = match term.split_once("*q^") {
        Some((c, e)) => (c, parse_exponent(e, whole)?),
        None => (term, 0),
    };
    let c: C = coeff
        .parse()
        .map_err(|_| parse_err(whole, format!("bad coefficient {coeff:?}")))?;
    Ok((exp, if negative { -c } else { c }))
}

impl<C: Scalar + FromStr> FromStr for LaurentPoly<C> {
    type Err = QbkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(parse_err(s, "empty input"));
        }
        let mut rest = s;
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        }
        let mut terms = Vec::new();
        loop {
            let next = [" + ", " - "]
                .iter()
                .filter_map(|sep| rest.find(sep).map(|i| (i, *sep)))
                .min_by_key(|(i, _)| *i);
            match next {
                Some((i, sep)) => {
                    terms.push(parse_term::<C>(&rest[..i], negative, s)?);
                    negative = sep == " - ";
                    rest = &rest[i + sep.len()..];
                }
                None => {
                    terms.push(parse_term::<C>(rest, negative, s)?);
                    break;
                }
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl<C: Scalar + FromStr> FromStr for RationalFunction<C> {
    type Err = QbkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).and_then(|t| t.split_once(")/(")) {
            Some((num, den)) => RationalFunction::new(num.parse()?, den.parse()?),
            None => Ok(RationalFunction::from_poly(s.parse()?)),
        }
    }
}
