//! Exact checks of the identities relating representation-theoretic
//! coefficients over `Q(xi)` to Bernoulli values.

pub mod field;
pub mod poly;
pub mod series;

pub use field::{cyclotomic_polynomial, CycloNumber};
pub use series::{Coefficient, TruncatedSeries};

use crate::error::{Error, Result};
use crate::exact::{frac, int, Rational};

fn check_order(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidOrder { r, min: 2 });
    }
    Ok(())
}

fn check_index(r: u32, q: u32) -> Result<()> {
    check_order(r)?;
    if q >= r {
        return Err(Error::InvalidSpinData(format!("q must lie in 0..{r}, got {q}")));
    }
    Ok(())
}

/// `sum_{i=1}^{r-1} xi^{qi} / ((1 - xi^i)(1 - xi^{-i}))`, evaluated in
/// `Q(xi)` and returned once it is seen to be rational.
pub fn cyclo_sum(r: u32, q: u32) -> Result<Rational> {
    check_index(r, q)?;
    let one = CycloNumber::one(r);
    let mut total = CycloNumber::zero(r);
    for i in 1..i64::from(r) {
        let a = one.sub(&CycloNumber::xi_pow(r, i));
        let b = one.sub(&CycloNumber::xi_pow(r, -i));
        let term = CycloNumber::xi_pow(r, i64::from(q) * i).mul(&a.mul(&b).inverse()?);
        total = total.add(&term);
    }
    total
        .to_rational()
        .ok_or_else(|| Error::Internal(format!("cyclotomic sum is not rational: {total}")))
}

/// `(r^2 - 1)/12 - q(r - q)/2`.
pub fn cyclo_sum_closed_form(r: u32, q: u32) -> Rational {
    let (r, q) = (i64::from(r), i64::from(q));
    frac(r * r - 1, 12) - frac(q * (r - q), 2)
}

/// Both sides of
/// `sum_i xi^{qi}/(xi^i e^x - 1) = r e^{k x}/(e^{rx} - 1) - 1/(e^x - 1)`
/// multiplied by `e^{rx} - 1`, up to `x^order`. The exponent `k` is
/// `(r - q) mod r`.
pub fn series_bridge_sides(
    r: u32,
    q: u32,
    order: usize,
) -> Result<(TruncatedSeries<CycloNumber>, TruncatedSeries<Rational>)> {
    check_index(r, q)?;
    let k = (r - q) % r;
    bridge_sides_with_exponent(r, q, k, order)
}

fn bridge_sides_with_exponent(
    r: u32,
    q: u32,
    k: u32,
    order: usize,
) -> Result<(TruncatedSeries<CycloNumber>, TruncatedSeries<Rational>)> {
    let len = order + 1;
    let ri = int(i64::from(r));
    let one_c = CycloNumber::one(r);
    let e_rx = TruncatedSeries::exp_linear(&one_c, &ri, len);
    let scale = &e_rx - &TruncatedSeries::constant(one_c.clone(), len);

    let mut left = TruncatedSeries::constant(CycloNumber::zero(r), len);
    for i in 1..i64::from(r) {
        let xi_i = CycloNumber::xi_pow(r, i);
        let denom = &TruncatedSeries::exp_linear(&one_c, &int(1), len).scale(&xi_i)
            - &TruncatedSeries::constant(one_c.clone(), len);
        let term = denom.inverse()?.scale(&CycloNumber::xi_pow(r, i64::from(q) * i));
        left = &left + &term;
    }
    let left = &left * &scale;

    let one = int(1);
    let mut right = TruncatedSeries::exp_linear(&one, &int(i64::from(k)), len).scale(&ri);
    for j in 0..r {
        right = &right - &TruncatedSeries::exp_linear(&one, &int(i64::from(j)), len);
    }
    Ok((left, right))
}

fn sides_agree(left: &TruncatedSeries<CycloNumber>, right: &TruncatedSeries<Rational>) -> bool {
    left.coefficients()
        .iter()
        .zip(right.coefficients())
        .all(|(a, b)| a.to_rational().as_ref() == Some(b))
}

/// Whether the series identity holds through `x^order`.
pub fn series_bridge_check(r: u32, q: u32, order: usize) -> Result<bool> {
    let (left, right) = series_bridge_sides(r, q, order)?;
    Ok(sides_agree(&left, &right))
}

/// The identity with the exponent `r - q` taken literally (so `r` at
/// `q = 0`).
pub fn series_bridge_check_literal(r: u32, q: u32, order: usize) -> Result<bool> {
    check_index(r, q)?;
    let (left, right) = bridge_sides_with_exponent(r, q, r - q, order)?;
    Ok(sides_agree(&left, &right))
}

/// `(1 - xi^i) sum_{d=1}^{r-1} (d/r) xi^{id} = -1` for every `0 < i < r`.
pub fn geometric_coeff_check(r: u32) -> Result<bool> {
    check_order(r)?;
    let one = CycloNumber::one(r);
    let ri = i64::from(r);
    for i in 1..ri {
        let mut sum = CycloNumber::zero(r);
        for d in 1..ri {
            sum = sum.add(&CycloNumber::xi_pow(r, i * d).scale(&frac(d, ri)));
        }
        let product = one.sub(&CycloNumber::xi_pow(r, i)).mul(&sum);
        if product.to_rational() != Some(int(-1)) {
            return Ok(false);
        }
    }
    Ok(true)
}
