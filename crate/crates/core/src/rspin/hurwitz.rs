//! Hurwitz numbers by direct enumeration of transposition factorizations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use num_bigint::BigInt;

use crate::exact::Rational;

/// Largest degree the enumeration accepts.
pub const MAX_DEGREE: u32 = 7;

type Perm = [u8; MAX_DEGREE as usize];

/// Permutation and connected-component labels, packed three bits per point.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State(u64);

impl State {
    fn pack(perm: &Perm, labels: &Perm, d: usize) -> Self {
        let mut key = 0u64;
        for i in 0..d {
            key |= u64::from(perm[i]) << (6 * i);
            key |= u64::from(labels[i]) << (6 * i + 3);
        }
        State(key)
    }

    fn unpack(self, d: usize) -> (Perm, Perm) {
        let mut perm = [0u8; MAX_DEGREE as usize];
        let mut labels = [0u8; MAX_DEGREE as usize];
        for i in 0..d {
            perm[i] = ((self.0 >> (6 * i)) & 7) as u8;
            labels[i] = ((self.0 >> (6 * i + 3)) & 7) as u8;
        }
        (perm, labels)
    }
}

fn canonical_labels(labels: &mut Perm, d: usize) -> usize {
    let mut map = [u8::MAX; MAX_DEGREE as usize];
    let mut next = 0u8;
    for label in labels.iter_mut().take(d) {
        let l = *label as usize;
        if map[l] == u8::MAX {
            map[l] = next;
            next += 1;
        }
        *label = map[l];
    }
    next as usize
}

fn step(perm: &Perm, labels: &Perm, i: usize, j: usize, d: usize) -> (Perm, Perm, usize) {
    let mut p = *perm;
    p.swap(i, j);
    let mut l = *labels;
    let (from, to) = (l[j], l[i]);
    for x in l.iter_mut().take(d) {
        if *x == from {
            *x = to;
        }
    }
    let blocks = canonical_labels(&mut l, d);
    (p, l, blocks)
}

/// Permutation of cycle type `b` on `0..d`: consecutive blocks are cycles.
fn target_permutation(b: &[u32]) -> Perm {
    let mut perm = [0u8; MAX_DEGREE as usize];
    let mut start = 0usize;
    for &len in b {
        let len = len as usize;
        for k in 0..len {
            perm[start + k] = (start + (k + 1) % len) as u8;
        }
        start += len;
    }
    perm
}

fn count_from(
    perm: Perm,
    labels: Perm,
    remaining: usize,
    target: &Perm,
    transpositions: &[(usize, usize)],
    d: usize,
) -> u128 {
    let mut layer: HashMap<State, u128> = HashMap::new();
    layer.insert(State::pack(&perm, &labels, d), 1);
    for left in (0..remaining).rev() {
        let mut next: HashMap<State, u128> = HashMap::with_capacity(layer.len() * 2);
        for (state, count) in &layer {
            let (p, l) = state.unpack(d);
            for &(i, j) in transpositions {
                let (p2, l2, blocks) = step(&p, &l, i, j, d);
                if blocks - 1 > left {
                    continue;
                }
                *next.entry(State::pack(&p2, &l2, d)).or_insert(0) += count;
            }
        }
        layer = next;
    }
    let connected = [0u8; MAX_DEGREE as usize];
    layer
        .get(&State::pack(target, &connected, d))
        .copied()
        .unwrap_or(0)
}

/// Number of tuples of `d + n - 2` transpositions in `S_d` with product a
/// fixed permutation of cycle type `b` and generating a transitive group.
pub fn factorization_count(b: &[u32]) -> Result<u128> {
    if b.is_empty() || b.contains(&0) {
        return Err(Error::InvalidProfile(format!(
            "profile must be a nonempty list of positive integers, got {b:?}"
        )));
    }
    let d: u32 = b.iter().sum();
    if d > MAX_DEGREE {
        return Err(Error::SearchBound {
            degree: d,
            bound: MAX_DEGREE,
        });
    }
    let d = d as usize;
    let length = d + b.len() - 2;
    let target = target_permutation(b);
    if d == 1 {
        return Ok(u128::from(length == 0));
    }
    let mut identity = [0u8; MAX_DEGREE as usize];
    let mut singletons = [0u8; MAX_DEGREE as usize];
    for i in 0..d {
        identity[i] = i as u8;
        singletons[i] = i as u8;
    }
    let transpositions: Vec<(usize, usize)> =
        (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    if length == 0 {
        return Ok(0);
    }
    let partials = crate::par::map_collect(&transpositions, |&(i, j)| {
        let (p, l, _) = step(&identity, &singletons, i, j, d);
        count_from(p, l, length - 1, &target, &transpositions, d)
    });
    Ok(partials.into_iter().sum())
}

/// Hurwitz number with labelled poles: the factorization count divided by
/// `prod b_i` (the centralizer order with labelled cycles).
pub fn hurwitz_oracle(b: &[u32]) -> Result<Rational> {
    let count = factorization_count(b)?;
    let denom: i64 = b.iter().map(|&x| i64::from(x)).product();
    Ok(Rational::new(BigInt::from(count), BigInt::from(denom)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    /// Exhaustive enumeration of transposition tuples, for tiny cases.
    fn brute_force(b: &[u32]) -> u128 {
        let d: usize = b.iter().sum::<u32>() as usize;
        let length = d + b.len() - 2;
        let target = target_permutation(b);
        let ts: Vec<(usize, usize)> =
            (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let mut count = 0u128;
        let total = ts.len().pow(length as u32);
        for code in 0..total {
            let mut perm: Vec<usize> = (0..d).collect();
            let mut parent: Vec<usize> = (0..d).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let root = find(p, p[x]);
                    p[x] = root;
                }
                p[x]
            }
            let mut c = code;
            for _ in 0..length {
                let (i, j) = ts[c % ts.len()];
                c /= ts.len();
                perm.swap(i, j);
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
            let root = find(&mut parent, 0);
            let connected = (0..d).all(|x| find(&mut parent, x) == root);
            if connected && (0..d).all(|x| perm[x] == target[x] as usize) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn matches_brute_force() {
        for b in [vec![1, 1, 1], vec![2, 1], vec![3], vec![2, 2], vec![2, 1, 1], vec![3, 1], vec![1, 1, 1, 1]] {
            assert_eq!(factorization_count(&b).unwrap(), brute_force(&b), "{b:?}");
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(factorization_count(&[1, 1, 1]).unwrap(), 24);
        assert_eq!(hurwitz_oracle(&[2]).unwrap(), frac(1, 2));
        assert_eq!(hurwitz_oracle(&[1, 1, 1]).unwrap(), int(24));
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            hurwitz_oracle(&[4, 4]),
            Err(Error::SearchBound { degree: 8, bound: 7 })
        ));
        assert!(hurwitz_oracle(&[]).is_err());
        assert!(hurwitz_oracle(&[2, 0]).is_err());
    }
}
