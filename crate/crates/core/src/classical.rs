//! The q = 1 picture: Bernoulli numbers, power sums `S_n(k) = sum_{j<k} j^n`,
//! the monic Bernoulli polynomials whose integral gives `S_n(k)`, and the
//! Taylor coefficients of `-t e^t / (1 - e^t)^2`.

use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::Scalar;
use crate::{rat, Rational};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct DensePoly<C> {
    coeffs: Vec<C>,
}

/// Polynomial in `k` (or `x`) over exact rationals.
pub type RationalPoly = DensePoly<Rational>;

impl<C: Scalar> DensePoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * C::from_int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![C::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() / C::from_int(i as i64 + 1)),
        );
        Self::new(out)
    }

    /// Exact definite integral over `[a, b]`.
    pub fn integrate(&self, a: &C, b: &C) -> C {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }
}

impl<C: Scalar + Display + Signed> Display for DensePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sign}{}", c.abs())?;
            match i {
                0 => {}
                1 => write!(f, "*k")?,
                _ => write!(f, "*k^{i}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Bernoulli numbers `B_0..=B_N` for the convention `t/(e^t - 1) = sum B_n t^n/n!`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Fills the table with the recurrence `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
    pub fn new(max_index: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max_index + 1);
        values.push(Rational::one());
        for n in 1..=max_index {
            let partial: Rational = values
                .iter()
                .enumerate()
                .map(|(j, b)| b * Rational::from_integer(binomial(n + 1, j)))
                .sum();
            values.push(-partial / Rational::from_integer(BigInt::from(n + 1)));
        }
        BernoulliTable { values }
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

pub fn bernoulli(n: usize) -> Rational {
    BernoulliTable::new(n).values[n].clone()
}

/// `1^n + 2^n + ... + (k-1)^n`, summed directly.
pub fn sum_powers_brute(n: u32, k: u64) -> Rational {
    let total: BigInt = (1..k).map(|j| BigInt::from(j).pow(n)).sum();
    Rational::from_integer(total)
}

/// `S_n(k) = (1/(n+1)) sum_{j=0}^{n} C(n+1, j) B_j k^(n+1-j)` as a polynomial in `k`.
pub fn sum_powers_poly(n: usize) -> RationalPoly {
    let table = BernoulliTable::new(n);
    let mut coeffs = vec![Rational::zero(); n + 2];
    let scale = Rational::from_integer(BigInt::from(n + 1));
    for j in 0..=n {
        coeffs[n + 1 - j] = &table.values[j] * Rational::from_integer(binomial(n + 1, j)) / &scale;
    }
    DensePoly::new(coeffs)
}

/// The monic degree-`n` polynomial `B_n(x)` with `S_n(k) = integral_0^k B_n(x) dx`.
pub fn bernoulli_monic_poly(n: usize) -> RationalPoly {
    sum_powers_poly(n).derivative()
}

/// Truncated power series with exact coefficients, `coeffs[i]` of `t^i`.
fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    (0..order)
        .map(|i| (0..=i).map(|j| &a[j] * &b[i - j]).sum())
        .collect()
}

fn series_inverse(a: &[Rational], order: usize) -> Vec<Rational> {
    let mut inv = vec![Rational::zero(); order];
    inv[0] = a[0].recip();
    for i in 1..order {
        let s: Rational = (1..=i).map(|j| &a[j] * &inv[i - j]).sum();
        inv[i] = -s * &inv[0];
    }
    inv
}

/// Coefficients of `e^t / ((e^t - 1)/t)^2` up to `t^(order-1)`.
///
/// `-t e^t / (1 - e^t)^2 = -(1/t) * h(t)`, so `h_0` gives the pole and
/// `h_{n+1}` gives the `t^n` coefficient.
fn barnes_kernel(order: usize) -> Vec<Rational> {
    let mut fact = Rational::one();
    let mut exp = Vec::with_capacity(order + 1);
    for i in 0..=order {
        if i > 0 {
            fact *= rat(i as i64);
        }
        exp.push(fact.recip());
    }
    // (e^t - 1)/t = sum t^i/(i+1)!
    let u: Vec<Rational> = exp[1..=order].to_vec();
    let u2 = series_mul(&u, &u, order);
    series_mul(&exp[..order], &series_inverse(&u2, order), order)
}

/// `n! [t^n]` of `-t e^t / (1 - e^t)^2`, ignoring the `t^-1` pole.
pub fn barnes_limit_coeff(n: usize) -> Rational {
    let h = barnes_kernel(n + 2);
    let n_fact: Rational = (1..=n as i64).map(rat).product();
    -(&h[n + 1]) * n_fact
}

/// Coefficient of `t^-1` in `-t e^t / (1 - e^t)^2`; it is `-1`.
pub fn barnes_pole_coeff() -> Rational {
    -barnes_kernel(1)[0].clone()
}
