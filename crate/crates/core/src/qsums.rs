//! Finite q-power sums and the identity corpus around them.
//!
//! Every identity is checked per instance: both sides are built as exact
//! ratios, canonicalized, and compared structurally. Closed forms keep the
//! factor grouping in which they are usually quoted, so a transcription
//! error shows up as a mismatch of one specific case.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QbkError, Result};
use crate::qbernoulli::{beta_star, beta_star_poly, EvenOrder};
use crate::qcore::{q_binomial, q_int, q_int_base_poly, q_int_poly, QIndex};
use crate::{rat, HalfPowerPoly, QRatio, Rational};

/// `[j]_{q^2} [j]_q^(e)`
fn weighted_power(j: i64, e: u32) -> HalfPowerPoly {
    let base2 = q_int_base_poly(j, 2).expect("nonnegative index");
    let base1 = q_int_poly(j).expect("nonnegative index");
    &base2 * &base1.pow(e)
}

/// `S_{m,n}(q) = sum_{k=1}^{n} [k]_{q^2} [k]_q^(m-1) q^((n-k)(m+1)/2)`.
pub fn s_mn_brute(m: i64, n: i64) -> Result<HalfPowerPoly> {
    if m < 1 {
        return Err(QbkError::InvalidParameter(format!("m = {m} must be positive")));
    }
    if n < 0 {
        return Err(QbkError::InvalidParameter(format!("n = {n} must be nonnegative")));
    }
    Ok((1..=n)
        .map(|k| weighted_power(k, (m - 1) as u32).shift((n - k) * (m + 1)))
        .sum())
}

/// `sum_{j=0}^{k-1} [j]_{q^2} [j]_q^(n-1) q^((n+1)(k-j)/2)`.
pub fn s_theorem3_brute(n: i64, k: i64) -> Result<HalfPowerPoly> {
    let n = EvenOrder::new(n)?.get();
    if k < 1 {
        return Err(QbkError::InvalidParameter(format!("k = {k} must be positive")));
    }
    Ok((1..k)
        .map(|j| weighted_power(j, (n - 1) as u32).shift((n + 1) * (k - j)))
        .sum())
}

/// `(beta*_{n,k,q}(k) - beta*_{n,k,q}) / n`.
pub fn s_theorem3_closed(n: i64, k: i64) -> Result<QRatio> {
    let diff = beta_star_poly(n, k)? - beta_star(n, k)?;
    Ok(diff.scale(&Rational::new(1.into(), n.into())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    Warnaar,
    GarrettHummel,
    SchlosserM2,
    SchlosserM3,
    SchlosserM4,
    SchlosserM5,
    KimLinear,
    KimQuadratic,
    Theorem3,
    S12VsTheorem3,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::Warnaar,
        IdentityId::GarrettHummel,
        IdentityId::SchlosserM2,
        IdentityId::SchlosserM3,
        IdentityId::SchlosserM4,
        IdentityId::SchlosserM5,
        IdentityId::KimLinear,
        IdentityId::KimQuadratic,
        IdentityId::Theorem3,
        IdentityId::S12VsTheorem3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Warnaar => "warnaar",
            IdentityId::GarrettHummel => "garrett_hummel",
            IdentityId::SchlosserM2 => "schlosser_m2",
            IdentityId::SchlosserM3 => "schlosser_m3",
            IdentityId::SchlosserM4 => "schlosser_m4",
            IdentityId::SchlosserM5 => "schlosser_m5",
            IdentityId::KimLinear => "kim_linear",
            IdentityId::KimQuadratic => "kim_quadratic",
            IdentityId::Theorem3 => "theorem3",
            IdentityId::S12VsTheorem3 => "s12_vs_theorem3",
        }
    }

    pub fn schlosser(m: i64) -> Result<Self> {
        match m {
            2 => Ok(IdentityId::SchlosserM2),
            3 => Ok(IdentityId::SchlosserM3),
            4 => Ok(IdentityId::SchlosserM4),
            5 => Ok(IdentityId::SchlosserM5),
            _ => Err(QbkError::UnsupportedM(m)),
        }
    }

    /// The fixed `m` of a Schlosser identity.
    pub fn schlosser_m(self) -> Option<i64> {
        match self {
            IdentityId::SchlosserM2 => Some(2),
            IdentityId::SchlosserM3 => Some(3),
            IdentityId::SchlosserM4 => Some(4),
            IdentityId::SchlosserM5 => Some(5),
            _ => None,
        }
    }

    /// True for identities parametrized by an even order and `k`.
    pub fn takes_order_and_k(self) -> bool {
        matches!(self, IdentityId::Theorem3 | IdentityId::S12VsTheorem3)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = QbkError;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| QbkError::Parse { input: s.to_string(), reason: "unknown identity".into() })
    }
}

/// One instance of a named identity.
///
/// `params` is `[n]` for the single-parameter identities, `[m, n]` for the
/// Schlosser family and `[n, k]` for `theorem3` and its bridge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Equal,
    Mismatch,
    Error,
}

/// Outcome of one identity check, with both sides in canonical rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Vec<i64>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

fn qi(twice: i64) -> QRatio {
    q_int(QIndex::from_twice(twice).expect("nonnegative index"))
}

fn qbinom_sq(n: i64, k: i64) -> QRatio {
    QRatio::from_poly(q_binomial::<Rational>(n, k).pow(2))
}

/// `1 - q^(e/2)`
fn om(e2: i64) -> QRatio {
    QRatio::one_minus_p_pow(e2)
}

fn qp(e: i64) -> QRatio {
    QRatio::q_pow(e)
}

fn require_positive(n: i64) -> Result<()> {
    if n < 1 {
        return Err(QbkError::InvalidParameter(format!("n = {n} must be positive")));
    }
    Ok(())
}

fn warnaar_sides(n: i64) -> Result<(QRatio, QRatio)> {
    require_positive(n)?;
    let den = &(&om(2) * &om(2)) * &om(4);
    let lhs = (1..=n)
        .map(|k| &(&(&qp(2 * n - 2 * k) * &om(2 * k)) * &(&om(2 * k) * &om(4 * k))) / &den)
        .sum();
    Ok((lhs, qbinom_sq(n + 1, 2)))
}

fn garrett_hummel_sides(n: i64) -> Result<(QRatio, QRatio)> {
    require_positive(n)?;
    let lhs = (1..=n)
        .map(|k| {
            let ratio = &om(2 * k) / &om(2);
            let bracket = &(&om(2 * (k - 1)) / &om(4)) + &(&om(2 * (k + 1)) / &om(4));
            &(&qp(k - 1) * &(&ratio * &ratio)) * &bracket
        })
        .sum();
    Ok((lhs, qbinom_sq(n + 1, 2)))
}

/// Quoted closed forms for `S_{m,n}(q)`, `m = 2..=5`.
pub fn schlosser_closed(m: i64, n: i64) -> Result<QRatio> {
    require_positive(n)?;
    let closed = match m {
        // [n][n+1][n+1/2] / ([1][2][3/2])
        2 => &(&(&qi(2 * n) * &qi(2 * n + 2)) * &qi(2 * n + 1)) / &(&(&qi(2) * &qi(4)) * &qi(3)),
        3 => qbinom_sq(n + 1, 2),
        4 => {
            let lead = &(&(&om(2 * n) * &om(2 * n + 2)) * &om(2 * n + 1)) / &(&(&om(2) * &om(4)) * &om(5));
            let first = &(&om(2 * n) * &om(2 * n + 2)) / &(&om(2) * &om(2));
            let second = &(&qp(n) * &om(1)) / &om(3);
            &lead * &(&first - &second)
        }
        5 => {
            let a = &om(2 * n) * &om(2 * n + 2);
            let lead = &(&a * &a) / &(&(&(&om(2) * &om(2)) * &om(4)) * &om(6));
            let first = &a / &(&om(2) * &om(2));
            let second = &(&qp(n) * &om(2)) / &om(4);
            &lead * &(&first - &second)
        }
        _ => return Err(QbkError::UnsupportedM(m)),
    };
    Ok(closed)
}

fn kim_linear_sides(n: i64) -> Result<(QRatio, QRatio)> {
    require_positive(n)?;
    let lhs = (0..n).map(|k| &qp(k) * &qi(2 * k)).sum();
    let half = Rational::new(1.into(), 2.into());
    let rhs = (&(&qi(2 * n) * &qi(2 * n)) - &(&qi(4 * n) / &qi(4))).scale(&half);
    Ok((lhs, rhs))
}

fn kim_quadratic_sides(n: i64) -> Result<(QRatio, QRatio)> {
    require_positive(n)?;
    let lhs = (0..n).map(|k| &qp(k + 1) * &(&qi(2 * k) * &qi(2 * k))).sum();
    let third = Rational::new(1.into(), 3.into());
    let half = Rational::new(1.into(), 2.into());
    let cube = qi(2 * n).checked_pow(3)?;
    let linear = &(&qi(2 * n) * &qi(2 * n)) - &(&qi(4 * n) / &qi(4));
    let rhs = &(&cube.scale(&third) - &linear.scale(&half)) - &(&qi(6 * n) / &qi(6)).scale(&third);
    Ok((lhs, rhs))
}

fn theorem3_sides(n: i64, k: i64) -> Result<(QRatio, QRatio)> {
    Ok((QRatio::from_poly(s_theorem3_brute(n, k)?), s_theorem3_closed(n, k)?))
}

/// `s_theorem3_brute(n, k)` against `q^((n+1)/2) S_{n,k-1}(q)`.
fn bridge_sides(n: i64, k: i64) -> Result<(QRatio, QRatio)> {
    let lhs = s_theorem3_brute(n, k)?;
    let rhs = s_mn_brute(n, k - 1)?.shift(n + 1);
    Ok((QRatio::from_poly(lhs), QRatio::from_poly(rhs)))
}

impl IdentityCase {
    pub fn new(id: IdentityId, params: Vec<i64>) -> Self {
        IdentityCase { id, params }
    }

    fn param(&self, i: usize) -> Result<i64> {
        let expected = if matches!(self.id, IdentityId::Warnaar | IdentityId::GarrettHummel | IdentityId::KimLinear | IdentityId::KimQuadratic) {
            1
        } else {
            2
        };
        if self.params.len() != expected {
            return Err(QbkError::InvalidParameter(format!(
                "{} takes {expected} parameter(s), got {}",
                self.id,
                self.params.len()
            )));
        }
        Ok(self.params[i])
    }

    /// Both sides of the identity, canonicalized.
    pub fn sides(&self) -> Result<(QRatio, QRatio)> {
        match self.id {
            IdentityId::Warnaar => warnaar_sides(self.param(0)?),
            IdentityId::GarrettHummel => garrett_hummel_sides(self.param(0)?),
            IdentityId::SchlosserM2 | IdentityId::SchlosserM3 | IdentityId::SchlosserM4 | IdentityId::SchlosserM5 => {
                let (m, n) = (self.param(0)?, self.param(1)?);
                if IdentityId::schlosser(m)? != self.id {
                    return Err(QbkError::InvalidParameter(format!(
                        "{} needs m = {}",
                        self.id,
                        self.id.schlosser_m().unwrap_or_default()
                    )));
                }
                let closed = schlosser_closed(m, n)?;
                Ok((QRatio::from_poly(s_mn_brute(m, n)?), closed))
            }
            IdentityId::KimLinear => kim_linear_sides(self.param(0)?),
            IdentityId::KimQuadratic => kim_quadratic_sides(self.param(0)?),
            IdentityId::Theorem3 => theorem3_sides(self.param(0)?, self.param(1)?),
            IdentityId::S12VsTheorem3 => bridge_sides(self.param(0)?, self.param(1)?),
        }
    }

    pub fn run(&self) -> VerificationReport {
        let identity = self.id.as_str().to_string();
        match self.sides() {
            Ok((lhs, rhs)) => VerificationReport {
                identity,
                params: self.params.clone(),
                status: if lhs == rhs { Status::Equal } else { Status::Mismatch },
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
            Err(e) => VerificationReport {
                identity,
                params: self.params.clone(),
                status: Status::Error,
                lhs: String::new(),
                rhs: e.to_string(),
            },
        }
    }

    /// Evaluates both sides at `q = q_value`; `None` when either side has a pole there.
    pub fn spot_check(&self, q_value: &Rational) -> Result<Option<(Rational, Rational)>> {
        let (lhs, rhs) = self.sides()?;
        match (lhs.eval_q(q_value), rhs.eval_q(q_value)) {
            (Ok(a), Ok(b)) => Ok(Some((a, b))),
            (Err(QbkError::PoleAtPoint), _) | (_, Err(QbkError::PoleAtPoint)) => Ok(None),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }
}

pub fn warnaar_check(n: i64) -> VerificationReport {
    IdentityCase::new(IdentityId::Warnaar, vec![n]).run()
}

pub fn garrett_hummel_check(n: i64) -> VerificationReport {
    IdentityCase::new(IdentityId::GarrettHummel, vec![n]).run()
}

pub fn schlosser_check(m: i64, n: i64) -> Result<VerificationReport> {
    Ok(IdentityCase::new(IdentityId::schlosser(m)?, vec![m, n]).run())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KimVariant {
    Linear,
    Quadratic,
}

pub fn kim_check(which: KimVariant, n: i64) -> VerificationReport {
    let id = match which {
        KimVariant::Linear => IdentityId::KimLinear,
        KimVariant::Quadratic => IdentityId::KimQuadratic,
    };
    IdentityCase::new(id, vec![n]).run()
}

pub fn theorem3_check(n: i64, k: i64) -> Result<VerificationReport> {
    EvenOrder::new(n)?;
    Ok(IdentityCase::new(IdentityId::Theorem3, vec![n, k]).run())
}

/// Relation between the `theorem3` finite sum and `S_{n,k-1}(q)`.
pub fn theorem3_bridge_check(n: i64, k: i64) -> Result<VerificationReport> {
    EvenOrder::new(n)?;
    Ok(IdentityCase::new(IdentityId::S12VsTheorem3, vec![n, k]).run())
}

/// All cases of `id` up to the given bounds, in canonical order.
///
/// Single-parameter identities run `n = 1..=n_max`; Schlosser cases use the
/// fixed `m` of the identity; `theorem3` cases run even `n = 2..=n_max`
/// and `k = 1..=k_max`.
pub fn campaign_cases(id: IdentityId, n_max: i64, k_max: i64) -> Vec<IdentityCase> {
    match id {
        IdentityId::Warnaar | IdentityId::GarrettHummel | IdentityId::KimLinear | IdentityId::KimQuadratic => {
            (1..=n_max).map(|n| IdentityCase::new(id, vec![n])).collect()
        }
        IdentityId::SchlosserM2 | IdentityId::SchlosserM3 | IdentityId::SchlosserM4 | IdentityId::SchlosserM5 => {
            let m = id.schlosser_m().expect("schlosser identity");
            (1..=n_max).map(|n| IdentityCase::new(id, vec![m, n])).collect()
        }
        IdentityId::Theorem3 | IdentityId::S12VsTheorem3 => (2..=n_max)
            .step_by(2)
            .flat_map(|n| (1..=k_max).map(move |k| IdentityCase::new(id, vec![n, k])))
            .collect(),
    }
}

/// Runs every case and returns the reports sorted by `(identity, params)`.
///
/// `threads <= 1` runs sequentially; otherwise cases are spread over that
/// many scoped worker threads. The output does not depend on `threads`.
pub fn run_campaign(cases: &[IdentityCase], threads: usize) -> Vec<VerificationReport> {
    let mut indexed: Vec<(usize, VerificationReport)> = if threads <= 1 || cases.len() < 2 {
        cases.iter().map(IdentityCase::run).enumerate().collect()
    } else {
        let workers = threads.min(cases.len());
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        cases
                            .iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(i, c)| (i, c.run()))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("verification worker panicked"))
                .collect()
        })
    };
    indexed.sort_by(|(a, _), (b, _)| cases[*a].cmp(&cases[*b]));
    indexed.into_iter().map(|(_, r)| r).collect()
}

/// The polynomial `sum_{k=1}^{n} k^m` at `q = 1`, from the classical side.
pub fn classical_limit(m: i64, n: i64) -> Rational {
    (1..=n).map(|k| rat(k).pow(m as i32)).sum()
}

/// Turns a rendered polynomial back into a value; used for fixture replay.
pub fn parse_side(text: &str) -> Result<QRatio> {
    text.parse()
}

impl VerificationReport {
    /// The case this report describes.
    pub fn case(&self) -> Result<IdentityCase> {
        Ok(IdentityCase::new(self.identity.parse()?, self.params.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(cs: &[i64]) -> HalfPowerPoly {
        HalfPowerPoly::from_terms(cs.iter().enumerate().map(|(i, &c)| (2 * i as i64, rat(c))))
    }

    #[test]
    fn s_mn_small_cases() {
        assert_eq!(s_mn_brute(3, 2).unwrap(), qpoly(&[1, 2, 3, 2, 1]));
        assert!(s_mn_brute(4, 0).unwrap().is_zero());
        assert_eq!(s_mn_brute(2, 1).unwrap(), qpoly(&[1]));
    }

    #[test]
    fn theorem3_brute_small_cases() {
        assert!(s_theorem3_brute(2, 1).unwrap().is_zero());
        assert_eq!(s_theorem3_brute(2, 2).unwrap(), HalfPowerPoly::p_pow(3));
        // q^3 + (1+q^2)(1+q) q^(3/2)
        let expected = HalfPowerPoly::q_pow(3) + (qpoly(&[1, 0, 1]) * qpoly(&[1, 1])).shift(3);
        assert_eq!(s_theorem3_brute(2, 3).unwrap(), expected);
        assert_eq!(s_theorem3_brute(3, 2), Err(QbkError::OddOrder(3)));
    }

    #[test]
    fn theorem3_closed_small_cases() {
        assert!(s_theorem3_closed(2, 1).unwrap().is_zero());
        assert_eq!(s_theorem3_closed(2, 2).unwrap().as_polynomial(), Some(&HalfPowerPoly::p_pow(3)));
        assert_eq!(s_theorem3_closed(2, 3).unwrap().limit_at_one(), Ok(rat(5)));
    }

    #[test]
    fn identity_examples() {
        let w = warnaar_check(2);
        assert_eq!(w.status, Status::Equal);
        assert_eq!(w.lhs, "1 + 2*q^1 + 3*q^2 + 2*q^3 + 1*q^4");
        assert_eq!(warnaar_check(1).lhs, "1");
        assert_eq!(garrett_hummel_check(1).status, Status::Equal);
        assert_eq!(schlosser_check(3, 2).unwrap().status, Status::Equal);
        assert_eq!(schlosser_check(2, 1).unwrap().lhs, "1");
        assert_eq!(schlosser_check(1, 3), Err(QbkError::UnsupportedM(1)));
        let kl = kim_check(KimVariant::Linear, 2);
        assert_eq!((kl.status, kl.lhs.as_str()), (Status::Equal, "1*q^1"));
        let kq = kim_check(KimVariant::Quadratic, 2);
        assert_eq!((kq.status, kq.lhs.as_str()), (Status::Equal, "1*q^2"));
    }

    #[test]
    fn theorem3_reports() {
        let r = theorem3_check(2, 1).unwrap();
        assert_eq!((r.status, r.lhs.as_str(), r.rhs.as_str()), (Status::Equal, "0", "0"));
        let r = theorem3_check(2, 2).unwrap();
        assert_eq!((r.status, r.lhs.as_str()), (Status::Equal, "1*q^(3/2)"));
        let b = theorem3_bridge_check(2, 2).unwrap();
        assert_eq!((b.status, b.rhs.as_str()), (Status::Equal, "1*q^(3/2)"));
        assert_eq!(theorem3_check(5, 2), Err(QbkError::OddOrder(5)));
    }

    #[test]
    fn malformed_cases_report_errors() {
        let r = IdentityCase::new(IdentityId::Warnaar, vec![]).run();
        assert_eq!(r.status, Status::Error);
        let r = IdentityCase::new(IdentityId::SchlosserM4, vec![5, 2]).run();
        assert_eq!(r.status, Status::Error);
        let r = IdentityCase::new(IdentityId::Theorem3, vec![3, 2]).run();
        assert_eq!(r.status, Status::Error);
    }

    #[test]
    fn identity_ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("nope".parse::<IdentityId>().is_err());
    }

    #[test]
    fn campaign_order_is_independent_of_threads() {
        let mut cases = campaign_cases(IdentityId::KimLinear, 6, 0);
        cases.extend(campaign_cases(IdentityId::Theorem3, 4, 3));
        cases.reverse();
        let seq = run_campaign(&cases, 1);
        let par = run_campaign(&cases, 4);
        assert_eq!(seq, par);
        assert_eq!(seq[0].identity, "kim_linear");
        assert_eq!(seq[0].params, vec![1]);
        assert_eq!(seq.len(), 6 + 2 * 3);
    }
}
