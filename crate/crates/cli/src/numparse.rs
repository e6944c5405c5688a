use std::str::FromStr;

use num_bigint::BigInt;
use qbk_core::Rational;

/// A rational given on the command line as `n`, `n/d`, `0.25` or `1e-12`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalArg(pub Rational);

impl FromStr for RationalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational_text(s).map(RationalArg)
    }
}

pub fn parse_rational_text(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("invalid rational {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("invalid rational {s:?}"))?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| format!("invalid exponent in {s:?}"))?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.starts_with(['+', '-']) {
        return Err(format!("invalid number {s:?}"));
    }
    let value: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| format!("invalid number {s:?}"))?;
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(if scale < 0 { ten.recip() } else { ten }, scale.unsigned_abs() as usize);
    Ok(Rational::from_integer(value) * factor)
}
