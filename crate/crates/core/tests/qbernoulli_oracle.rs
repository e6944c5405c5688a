use std::collections::BTreeMap;

use proptest::prelude::*;
use qbk_core::qbernoulli::{
    beta_limit_q1, beta_star, beta_star_oracle, beta_star_poly, beta_star_poly_as_printed, beta_star_poly_oracle,
    BetaKind, BetaResult, Method,
};
use qbk_core::{rat, QRatio, QbkError, Rational};

fn binom(n: i64, m: i64) -> i64 {
    (0..m).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// `-n * sum_{j>=0} w(j) g(j)^(n-1)` at a numeric `p`, with `sum_j x^j := 1/(1-x)`.
///
/// `w(j) = w1 p^(2j) + w2 p^(-2j)` and `g(j) = g1 p^j + g2 p^(-j)`; the power of
/// `g` is expanded by the binomial theorem.
fn regularized_at(p: &Rational, n: i64, w: [Rational; 2], g: [Rational; 2]) -> Rational {
    let mut by_rate: BTreeMap<i64, Rational> = BTreeMap::new();
    for i in 0..n {
        let gcoef = rat(binom(n - 1, i)) * pow(&g[0], n - 1 - i) * pow(&g[1], i);
        let grate = (n - 1 - i) - i;
        for (wrate, wcoef) in [(2, &w[0]), (-2, &w[1])] {
            *by_rate.entry(grate + wrate).or_insert_with(|| rat(0)) += &gcoef * wcoef;
        }
    }
    let mut total = rat(0);
    for (rate, c) in by_rate {
        if c == rat(0) {
            continue;
        }
        assert_ne!(rate, 0, "surviving constant term");
        total += c / (rat(1) - pow(p, rate));
    }
    -rat(n) * total
}

/// Numeric oracle for `beta*_{n,k,q}` at `q = p^2`.
fn number_at(p: &Rational, n: i64, k: i64) -> Rational {
    let q = p * p;
    // w = q^k [j]_{q^2} q^(-j),  g = p^k [j]_q p^(-j)
    let wc = pow(&q, k) / (&q * &q - rat(1));
    let gc = pow(p, k) / (&q - rat(1));
    regularized_at(p, n, [wc.clone(), -wc], [gc.clone(), -gc])
}

/// Numeric oracle for `beta*_{n,k,q}(k)` at `q = p^2`.
fn polynomial_at(p: &Rational, n: i64, k: i64) -> Rational {
    let q = p * p;
    // w = q^(-j) [j+k]_{q^2},  g = p^(-j) [j+k]_q
    let wd = &q * &q - rat(1);
    let gd = &q - rat(1);
    regularized_at(p, n, [pow(&q, 2 * k) / &wd, -rat(1) / &wd], [pow(&q, k) / &gd, -rat(1) / &gd])
}

const POINTS: [(i64, i64); 3] = [(2, 1), (3, 2), (5, 7)];

#[test]
fn closed_forms_match_library_oracle_on_grid() {
    for n in [2, 4, 6, 8] {
        for k in 1..=5 {
            assert_eq!(beta_star(n, k).unwrap(), beta_star_oracle(n, k).unwrap(), "number n={n} k={k}");
            assert_eq!(beta_star_poly(n, k).unwrap(), beta_star_poly_oracle(n, k).unwrap(), "polynomial n={n} k={k}");
        }
    }
}

#[test]
fn closed_forms_match_pointwise_oracle() {
    for n in [2, 4, 6] {
        for k in 1..=4 {
            let number = beta_star(n, k).unwrap();
            let poly = beta_star_poly(n, k).unwrap();
            for (a, b) in POINTS {
                let p = Rational::new(a.into(), b.into());
                assert_eq!(number.eval_p(&p).unwrap(), number_at(&p, n, k), "number n={n} k={k} p={p}");
                assert_eq!(poly.eval_p(&p).unwrap(), polynomial_at(&p, n, k), "polynomial n={n} k={k} p={p}");
            }
        }
    }
}

#[test]
fn numbers_vanish_for_even_orders() {
    for n in [2, 4, 6, 8] {
        for k in 1..=5 {
            assert!(beta_star(n, k).unwrap().is_zero());
        }
    }
}

#[test]
fn polynomial_at_k1_is_the_number() {
    for n in [2, 4, 6, 8] {
        assert_eq!(beta_star_poly(n, 1).unwrap(), beta_star(n, 1).unwrap());
    }
}

#[test]
fn printed_polynomial_prefactor_differs_by_one_minus_q() {
    for n in [2, 4, 6, 8] {
        for k in 2..=6 {
            let printed = beta_star_poly_as_printed(n, k).unwrap();
            let value = beta_star_poly(n, k).unwrap();
            assert_eq!(printed, &value * &QRatio::one_minus_p_pow(2), "n={n} k={k}");
        }
    }
}

#[test]
fn limits_are_independent_of_k() {
    for n in [2, 4, 6, 8] {
        let first = beta_limit_q1(n, 1, BetaKind::Number).unwrap();
        for k in 2..=5 {
            assert_eq!(beta_limit_q1(n, k, BetaKind::Number).unwrap(), first);
        }
    }
}

#[test]
fn odd_and_small_orders_are_rejected() {
    for n in [1, 3, 5, 7] {
        assert_eq!(beta_star(n, 1), Err(QbkError::OddOrder(n)));
        assert_eq!(beta_star_poly(n, 2), Err(QbkError::OddOrder(n)));
        assert_eq!(beta_star_poly_oracle(n, 2), Err(QbkError::OddOrder(n)));
    }
    assert!(BetaResult::compute(BetaKind::Number, Method::Oracle, 0, 1).is_err());
}

#[test]
fn result_serializes_with_canonical_value() {
    let r = BetaResult::compute(BetaKind::Polynomial, Method::ClosedForm, 2, 2).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(json, r#"{"n":2,"k":2,"kind":"polynomial","method":"closed_form","value":"2*q^(3/2)"}"#);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polynomial_values_match_pointwise_oracle(n in 1i64..4, k in 1i64..6, a in 2i64..6, b in 1i64..4) {
        let n = 2 * n;
        let p = Rational::new(a.into(), b.into());
        prop_assume!(p != rat(1));
        let value = beta_star_poly(n, k).unwrap();
        prop_assert_eq!(value.eval_p(&p).unwrap(), polynomial_at(&p, n, k));
    }
}
