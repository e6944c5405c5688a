use proptest::prelude::*;
use qbk_core::qcore::{q_binomial, q_int, q_int_base, q_int_base_poly, q_int_poly, QIndex};
use qbk_core::{rat, HalfPowerPoly, QRatio, QbkError, Rational};

/// Gaussian binomials from the q-Pascal rule, built independently of the library.
fn pascal_oracle(n: usize) -> Vec<Vec<HalfPowerPoly>> {
    let mut rows: Vec<Vec<HalfPowerPoly>> = vec![vec![HalfPowerPoly::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = vec![HalfPowerPoly::one(); m + 1];
        for k in 1..m {
            // [m, k] = [m-1, k-1] + q^k [m-1, k]
            row[k] = &prev[k - 1] + &prev[k].shift(2 * k as i64);
        }
        rows.push(row);
    }
    rows
}

#[test]
fn binomials_match_pascal_oracle() {
    let oracle = pascal_oracle(12);
    for n in 0..=12i64 {
        for k in 0..=n {
            assert_eq!(q_binomial::<Rational>(n, k), oracle[n as usize][k as usize], "[{n}, {k}]");
        }
        assert!(q_binomial::<Rational>(n, n + 1).is_zero());
        assert!(q_binomial::<Rational>(n, -1).is_zero());
    }
}

#[test]
fn q_integers_at_one_are_integers() {
    for k in 0..15 {
        assert_eq!(q_int::<Rational>(QIndex::integer(k).unwrap()).limit_at_one(), Ok(rat(k)));
        assert_eq!(q_int_base::<Rational>(k, 2).unwrap().limit_at_one(), Ok(rat(k)));
    }
    // [k + 1/2]_q -> k + 1/2
    let half = q_int::<Rational>(QIndex::half_above(2).unwrap());
    assert_eq!(half.limit_at_one(), Ok(Rational::new(5.into(), 2.into())));
    assert!(matches!(QIndex::from_twice(-1), Err(QbkError::NegativeIndex(_))));
}

proptest! {
    #[test]
    fn binomials_are_symmetric_palindromic_and_nonnegative(n in 0i64..14, k in 0i64..14) {
        prop_assume!(k <= n);
        let b = q_binomial::<Rational>(n, k);
        prop_assert_eq!(&b, &q_binomial::<Rational>(n, n - k));
        prop_assert!(b.terms().all(|(e, c)| e % 2 == 0 && *c > rat(0)));
        let top = b.high_exp().unwrap();
        prop_assert_eq!(top, 2 * k * (n - k));
        prop_assert!(b.terms().all(|(e, c)| b.coeff(top - e) == *c));
        // q = 1 gives the ordinary binomial coefficient
        let ordinary: i64 = (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1));
        prop_assert_eq!(b.eval(&rat(1)).unwrap(), rat(ordinary));
    }

    #[test]
    fn q_integer_addition_rule(a in 0i64..20, b in 0i64..20) {
        // [a + b] = [a] + q^a [b]
        let lhs = q_int_poly::<Rational>(a + b).unwrap();
        let rhs = &q_int_poly::<Rational>(a).unwrap() + &q_int_poly::<Rational>(b).unwrap().shift(2 * a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn base_two_integer_is_a_quotient(k in 0i64..20) {
        // [k]_{q^2} = [2k]_q / [2]_q
        let quotient = QRatio::from_poly(q_int_poly(2 * k).unwrap())
            .checked_div(&QRatio::from_poly(q_int_poly(2).unwrap()))
            .unwrap();
        prop_assert_eq!(q_int_base::<Rational>(k, 2).unwrap(), quotient.clone());
        prop_assert_eq!(QRatio::from_poly(q_int_base_poly(k, 2).unwrap()), quotient);
    }

    #[test]
    fn half_index_integer_matches_definition(t in 0i64..30) {
        // [t/2]_q = (1 - q^(t/2)) / (1 - q)
        let def = QRatio::one_minus_p_pow(t).checked_div(&QRatio::one_minus_p_pow(2)).unwrap();
        prop_assert_eq!(q_int::<Rational>(QIndex::from_twice(t).unwrap()), def);
    }
}
