//! Truncated formal power series in one variable.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::CycloNumber;
use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

/// Coefficient rings the series accept.
pub trait Coefficient:
    Clone
    + PartialEq
    + std::fmt::Debug
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn rational_like(&self, c: Rational) -> Self;
    fn try_inverse(&self) -> Result<Self>;
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn rational_like(&self, c: Rational) -> Self {
        c
    }
    fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::Internal("division by zero".into()))
        } else {
            Ok(self.recip())
        }
    }
}

impl Add<&CycloNumber> for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::add(&self, rhs)
    }
}

impl Sub<&CycloNumber> for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::sub(&self, rhs)
    }
}

impl Mul<&CycloNumber> for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::mul(&self, rhs)
    }
}

impl Coefficient for CycloNumber {
    fn zero_like(&self) -> Self {
        CycloNumber::zero(self.r())
    }
    fn one_like(&self) -> Self {
        CycloNumber::one(self.r())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn rational_like(&self, c: Rational) -> Self {
        CycloNumber::rational(self.r(), c)
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inverse()
    }
}

/// `sum_{k < order} c_k x^k`; coefficients at and beyond `order` are unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coefficients: Vec<T>,
}

impl<T: Coefficient> TruncatedSeries<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        assert!(!coefficients.is_empty(), "a series needs at least one coefficient");
        Self { coefficients }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coefficients = vec![zero; order.max(1)];
        coefficients[0] = c;
        Self { coefficients }
    }

    /// `e^{a x}` with `a` rational, embedded next to `like`.
    pub fn exp_linear(like: &T, a: &Rational, order: usize) -> Self {
        let mut coefficients = Vec::with_capacity(order.max(1));
        let mut power = Rational::one();
        for k in 0..order.max(1) {
            let c = &power / Rational::from_integer(factorial(k));
            coefficients.push(like.rational_like(c));
            power *= a;
        }
        Self { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> &T {
        &self.coefficients[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coefficients[..order.min(self.order()).max(1)].to_vec())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coefficients.iter().map(|x| x.clone() * c).collect())
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero_coeff())
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coefficients[0].try_inverse()?;
        let mut out = vec![inv0.clone()];
        for k in 1..self.order() {
            let mut acc = inv0.zero_like();
            for j in 1..=k {
                acc = acc + &(self.coefficients[j].clone() * &out[k - j]);
            }
            out.push(inv0.zero_like() - &(acc * &inv0));
        }
        Ok(Self::new(out))
    }

    /// `self / other`, cancelling a common power of `x` first. The quotient
    /// loses as many known coefficients as the divisor's valuation.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let v = other
            .valuation()
            .ok_or_else(|| Error::Internal("division by a series with no known nonzero term".into()))?;
        if v >= self.order() || self.coefficients[..v].iter().any(|c| !c.is_zero_coeff()) {
            return Err(Error::Internal("quotient is not a power series".into()));
        }
        let num = Self::new(self.coefficients[v..].to_vec());
        let den = Self::new(other.coefficients[v..].to_vec());
        let order = num.order().min(den.order());
        Ok(&num.truncate(order) * &den.truncate(order).inverse()?)
    }
}

impl<T: Coefficient> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new(
            (0..order)
                .map(|k| self.coefficients[k].clone() + &rhs.coefficients[k])
                .collect(),
        )
    }
}

impl<T: Coefficient> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new(
            (0..order)
                .map(|k| self.coefficients[k].clone() - &rhs.coefficients[k])
                .collect(),
        )
    }
}

impl<T: Coefficient> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn neg(self) -> TruncatedSeries<T> {
        let zero = self.coefficients[0].zero_like();
        TruncatedSeries::new(self.coefficients.iter().map(|c| zero.clone() - c).collect())
    }
}

impl<T: Coefficient> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let order = self.order().min(rhs.order());
        let zero = self.coefficients[0].zero_like();
        let mut out = vec![zero; order];
        for (i, a) in self.coefficients.iter().enumerate().take(order) {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate().take(order - i) {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        TruncatedSeries::new(out)
    }
}
