//! Exact arithmetic in the r-th cyclotomic field `Q[x]/Phi_r`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::poly::{self, Poly};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, Rational};

fn cache() -> &'static RwLock<HashMap<u32, Arc<Poly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_r`, obtained from `x^r - 1` by dividing out `Phi_d` for each proper
/// divisor `d` of `r`.
pub fn cyclotomic_polynomial(r: u32) -> Arc<Poly> {
    assert!(r >= 1, "r must be positive");
    if let Some(p) = cache().read().expect("cache poisoned").get(&r) {
        return Arc::clone(p);
    }
    let mut p: Poly = vec![Rational::zero(); r as usize + 1];
    p[0] = int(-1);
    p[r as usize] = int(1);
    for d in (1..r).filter(|d| r.is_multiple_of(*d)) {
        let (q, rem) = poly::divrem(&p, &cyclotomic_polynomial(d));
        debug_assert!(rem.is_empty());
        p = q;
    }
    let p = Arc::new(p);
    cache()
        .write()
        .expect("cache poisoned")
        .entry(r)
        .or_insert_with(|| Arc::clone(&p));
    p
}

/// Element of `Q(xi)` for a primitive r-th root of unity `xi`, stored as its
/// reduced polynomial in `xi` (degree below `deg Phi_r`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    r: u32,
    coefficients: Poly,
}

impl CycloNumber {
    fn reduce(r: u32, p: Poly) -> Self {
        let (_, rem) = poly::divrem(&p, &cyclotomic_polynomial(r));
        Self { r, coefficients: rem }
    }

    pub fn zero(r: u32) -> Self {
        Self {
            r,
            coefficients: Vec::new(),
        }
    }

    pub fn one(r: u32) -> Self {
        Self::rational(r, Rational::one())
    }

    pub fn rational(r: u32, c: Rational) -> Self {
        Self {
            r,
            coefficients: poly::trim(vec![c]),
        }
    }

    /// `xi^k` for any integer `k`.
    pub fn xi_pow(r: u32, k: i64) -> Self {
        let e = k.rem_euclid(i64::from(r)) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        Self::reduce(r, p)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Coefficients on `1, xi, xi^2, ..`, padded to `deg Phi_r`.
    pub fn coefficients(&self) -> Vec<Rational> {
        let deg = cyclotomic_polynomial(self.r).len() - 1;
        let mut out = self.coefficients.clone();
        out.resize(deg, Rational::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.coefficients.len() <= 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.coefficients.as_slice() {
            [] => Some(Rational::zero()),
            [c] => Some(c.clone()),
            _ => None,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.r, other.r, "mixing cyclotomic fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            r: self.r,
            coefficients: poly::add(&self.coefficients, &other.coefficients),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            r: self.r,
            coefficients: poly::sub(&self.coefficients, &other.coefficients),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::reduce(self.r, poly::mul(&self.coefficients, &other.coefficients))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            r: self.r,
            coefficients: poly::trim(self.coefficients.iter().map(|x| x * c).collect()),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self> {
        let modulus = cyclotomic_polynomial(self.r);
        let (g, s) = poly::ext_gcd(&self.coefficients, &modulus);
        if g.len() != 1 {
            return Err(Error::Internal("zero has no inverse".into()));
        }
        Ok(Self::reduce(self.r, s))
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("({})*xi", format_rational(c)),
                _ => format!("({})*xi^{i}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber[{}]({self})", self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[Rational]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(5)), vec![1; 5]);
    }

    #[test]
    fn degrees_are_totients() {
        for r in 1..=30u32 {
            let phi = (1..=r).filter(|&k| num_integer::gcd(k, r) == 1).count();
            assert_eq!(cyclotomic_polynomial(r).len() - 1, phi, "r={r}");
        }
    }

    #[test]
    fn roots_of_unity() {
        for r in 1..=12u32 {
            assert_eq!(CycloNumber::xi_pow(r, i64::from(r)), CycloNumber::one(r));
            let sum = (0..r).fold(CycloNumber::zero(r), |acc, k| {
                acc.add(&CycloNumber::xi_pow(r, i64::from(k)))
            });
            let expected = if r == 1 { int(1) } else { int(0) };
            assert_eq!(sum.to_rational(), Some(expected));
            for k in 1..r {
                let x = CycloNumber::one(r).sub(&CycloNumber::xi_pow(r, i64::from(k)));
                assert_eq!(x.mul(&x.inverse().unwrap()), CycloNumber::one(r));
            }
        }
        assert!(CycloNumber::zero(5).inverse().is_err());
        assert_eq!(CycloNumber::xi_pow(3, -1), CycloNumber::xi_pow(3, 2));
    }

    #[test]
    fn rational_extraction() {
        let x = CycloNumber::xi_pow(4, 1);
        assert_eq!(x.mul(&x).to_rational(), Some(int(-1)));
        assert!(!x.is_rational());
        assert_eq!(x.coefficients(), vec![int(0), int(1)]);
    }
}
