//! Exact scalars: rationals, factorials, binomials and Bernoulli polynomials.
//!
//! Every number in the crate is a [`Rational`] in canonical form (reduced,
//! positive denominator). The textual form is `p/q`, or `p` for integers.

mod bernoulli;

pub use bernoulli::{bernoulli_eval, bernoulli_number, bernoulli_poly, BernoulliPolynomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `numer / denom`, reduced. Panics on a zero denominator.
pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `x^e` for a possibly negative exponent (`x` nonzero when `e < 0`).
pub fn pow(x: &Rational, e: i32) -> Rational {
    num_traits::pow::Pow::pow(x, e)
}

/// Canonical `p/q` text; integers print without a denominator.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `sum_{q=1}^{r-1} q (r - q)`, summed term by term.
pub fn sum_q_rminusq(r: u32) -> Rational {
    let r = i64::from(r);
    let total: i64 = (1..r).map(|q| q * (r - q)).sum();
    int(total)
}
