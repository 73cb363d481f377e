//! Dense univariate polynomials over the rationals, lowest degree first.

use num_traits::{One, Zero};

use crate::exact::Rational;

pub type Poly = Vec<Rational>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rational], b: &[Rational]) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Poly {
    let neg: Poly = b.iter().map(|c| -c).collect();
    add(a, &neg)
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = trim(a.to_vec());
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (j, y) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// `(g, s)` with `g = gcd(a, m)` monic and `s a = g (mod m)`.
pub fn ext_gcd(a: &[Rational], m: &[Rational]) -> (Poly, Poly) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    match degree(&r0) {
        Some(d) => {
            let lead = r0[d].clone();
            let g = r0.iter().map(|c| c / &lead).collect();
            let s = s0.iter().map(|c| c / &lead).collect();
            (trim(g), trim(s))
        }
        None => (Vec::new(), Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn p(cs: &[i64]) -> Poly {
        trim(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_round_trip() {
        let a = p(&[3, 0, -2, 5, 1]);
        let b = p(&[1, 2, 1]);
        let (q, r) = divrem(&a, &b);
        assert!(degree(&r).unwrap_or(0) < 2);
        assert_eq!(add(&mul(&q, &b), &r), a);
    }

    #[test]
    fn inverse_modulo() {
        let m = p(&[1, 1, 1]);
        let a = p(&[-1, 1]);
        let (g, s) = ext_gcd(&a, &m);
        assert_eq!(g, p(&[1]));
        let (_, r) = divrem(&mul(&s, &a), &m);
        assert_eq!(r, p(&[1]));
    }
}
