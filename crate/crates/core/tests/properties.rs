use proptest::prelude::*;

use rootgrr::cyclo::cyclo_sum;
use rootgrr::exact::{bernoulli_eval, binomial, frac, int, parse_rational, pow, Rational};
use rootgrr::gw::{admissible_queries, gw_invariant};
use rootgrr::rspin::{elsv_genus0, w_number_genus0};

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..60).prop_map(|(p, q)| frac(p, q))
}

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `n! [t^n] t e^{xt}/(e^t - 1)` by direct series division, independent of
/// the crate's Bernoulli engine.
fn bernoulli_by_series(n: usize, x: &Rational) -> Rational {
    let fact = |k: usize| (1..=k).fold(int(1), |a, i| a * int(i as i64));
    let denom: Vec<Rational> = (0..=n).map(|k| int(1) / fact(k + 1)).collect();
    let numer: Vec<Rational> = (0..=n).map(|k| pow(x, k as i32) / fact(k)).collect();
    let mut quotient: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let acc = (1..=k).fold(numer[k].clone(), |acc, j| acc - &denom[j] * &quotient[k - j]);
        quotient.push(acc);
    }
    &quotient[n] * fact(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bernoulli_matches_series_definition(n in 0usize..=12, x in rational()) {
        prop_assert_eq!(bernoulli_eval(n, &x), bernoulli_by_series(n, &x));
    }

    #[test]
    fn bernoulli_addition(n in 0usize..=12, x in rational(), y in rational()) {
        let rhs = (0..=n).fold(int(0), |acc, m| {
            acc + Rational::from_integer(binomial(n, m)) * bernoulli_eval(m, &x) * pow(&y, (n - m) as i32)
        });
        prop_assert_eq!(bernoulli_eval(n, &(&x + &y)), rhs);
    }

    #[test]
    fn bernoulli_reflection(n in 0usize..=12, x in rational()) {
        prop_assert_eq!(bernoulli_eval(n, &x), sign(n) * bernoulli_eval(n, &(int(1) - &x)));
    }

    #[test]
    fn bernoulli_difference(n in 1usize..=12, x in rational()) {
        let lhs = bernoulli_eval(n, &x) - bernoulli_eval(n, &(&x + int(1)));
        prop_assert_eq!(lhs, -int(n as i64) * pow(&x, n as i32 - 1));
    }

    #[test]
    fn carlitz(a in 0usize..=8, b in 0usize..=8) {
        let side = |p: usize, q: usize| {
            sign(p) * (0..=p).fold(int(0), |acc, i| {
                acc + Rational::from_integer(binomial(p, i)) * bernoulli_eval(i + q, &int(0))
            })
        };
        prop_assert_eq!(side(a, b), side(b, a));
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()), Some(x));
    }

    #[test]
    fn cyclo_sum_formula(r in 2u32..=12, q in 0u32..12) {
        prop_assume!(q < r);
        let (ri, qi) = (i64::from(r), i64::from(q));
        prop_assert_eq!(cyclo_sum(r, q).unwrap(), frac(ri * ri - 1, 12) - frac(qi * (ri - qi), 2));
        prop_assert_eq!(cyclo_sum(r, q).unwrap(), cyclo_sum(r, (r - q) % r).unwrap());
    }

    #[test]
    fn elsv_permutation_symmetry(b in proptest::collection::vec(1u32..=3, 3..=5), seed in 0usize..120) {
        let mut c = b.clone();
        let len = c.len();
        c.rotate_left(seed % len);
        c.swap(0, (seed / 5) % len);
        prop_assert_eq!(elsv_genus0(&b).unwrap(), elsv_genus0(&c).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gw_conjugation(r in 2u32..=5, pick in any::<usize>()) {
        let queries = admissible_queries(r, 5).unwrap();
        let query = &queries[pick % queries.len()];
        prop_assert_eq!(gw_invariant(query).unwrap(), gw_invariant(&query.conjugate()).unwrap());
    }

    #[test]
    fn spin_permutation_invariance(shift in 0usize..4, pick in 0usize..4) {
        let rows = [(3u32, vec![5u32, 1, 1, 1]), (3, vec![3, 3, 1, 1]), (4, vec![6, 2, 1, 1]), (4, vec![3, 3, 3, 1])];
        let (r, k) = &rows[pick];
        let mut j = k.clone();
        j.rotate_left(shift);
        prop_assert_eq!(w_number_genus0(*r, k).unwrap(), w_number_genus0(*r, &j).unwrap());
    }
}
