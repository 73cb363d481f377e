//! Integrals of psi and kappa monomials over a single genus-0 moduli space.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use crate::exact::{factorial, Rational};

/// `int_{M_{0,n}} prod psi_i^{a_i}` = `(n-3)! / prod a_i!` when `sum a = n - 3`.
/// `psi` lists the nonzero exponents; the remaining legs carry exponent 0.
pub fn psi_integral(n: usize, psi: &[u32]) -> Rational {
    let total: usize = psi.iter().map(|&a| a as usize).sum();
    if n < 3 || psi.len() > n || total + 3 != n {
        return Rational::zero();
    }
    let denom = psi
        .iter()
        .fold(factorial(0), |acc, &a| acc * factorial(a as usize));
    Rational::new(factorial(n - 3), denom)
}

type Key = (usize, Vec<u32>, Vec<u32>);

fn cache() -> &'static RwLock<HashMap<Key, Rational>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `int_{M_{0,n}} prod psi^{a} prod_j kappa_{b_j}`.
///
/// Kappa classes are removed through extra markings: pushing forward
/// `prod_j psi_{n+j}^{b_j+1}` from `M_{0,n+m}` gives the sum over permutations
/// of `[m]` of `prod_{cycles c} kappa_{b(c)}`. The identity term is the
/// monomial we want; all others have fewer kappa factors and recurse.
pub fn psi_kappa_integral(n: usize, psi: &[u32], kappa: &[u32]) -> Rational {
    let mut psi: Vec<u32> = psi.iter().copied().filter(|&a| a > 0).collect();
    psi.sort_unstable();
    let mut kappa = kappa.to_vec();
    kappa.sort_unstable();
    let degree: usize = psi.iter().chain(&kappa).map(|&a| a as usize).sum();
    if n < 3 || degree + 3 != n {
        return Rational::zero();
    }
    if kappa.is_empty() {
        return psi_integral(n, &psi);
    }
    let key = (n, psi, kappa);
    if let Some(v) = cache().read().expect("integral cache poisoned").get(&key) {
        return v.clone();
    }
    let (n, psi, kappa) = &key;
    let m = kappa.len();
    let mut extended = psi.clone();
    extended.extend(kappa.iter().map(|b| b + 1));
    let mut value = psi_integral(n + m, &extended);
    for partition in set_partitions(m) {
        if partition.len() == m {
            continue;
        }
        let weight: usize = partition
            .iter()
            .map(|block| (1..block.len()).product::<usize>())
            .product();
        let merged: Vec<u32> = partition
            .iter()
            .map(|block| block.iter().map(|&j| kappa[j]).sum())
            .collect();
        let sub = psi_kappa_integral(*n, psi, &merged);
        value -= sub * Rational::from_integer(weight.into());
    }
    cache()
        .write()
        .expect("integral cache poisoned")
        .insert(key.clone(), value.clone());
    value
}

/// All set partitions of `{0, .., m-1}` as lists of blocks.
pub(crate) fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for x in 0..m {
        let mut next = Vec::new();
        for partition in &out {
            for b in 0..partition.len() {
                let mut p: Vec<Vec<usize>> = partition.clone();
                p[b].push(x);
                next.push(p);
            }
            let mut p = partition.clone();
            p.push(vec![x]);
            next.push(p);
        }
        out = next;
    }
    out
}

/// All `parts`-tuples of non-negative integers summing to `total`.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
