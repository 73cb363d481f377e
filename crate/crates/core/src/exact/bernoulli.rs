use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use super::{factorial, Rational};

/// `B_n(x)` with exact coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliPolynomial {
    coefficients: Vec<Rational>,
}

impl BernoulliPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coefficients.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

/// Coefficients `b_k` of `t / (e^t - 1) = sum_k b_k t^k`, so `B_k = k! b_k`.
/// Grown on demand by inverting `(e^t - 1)/t = sum_j t^j/(j+1)!`.
fn scaled_numbers(upto: usize) -> Vec<Rational> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(vec![Rational::from_integer(1.into())]));
    {
        let read = table.read().expect("bernoulli table poisoned");
        if read.len() > upto {
            return read[..=upto].to_vec();
        }
    }
    let mut write = table.write().expect("bernoulli table poisoned");
    while write.len() <= upto {
        let k = write.len();
        let mut acc = Rational::zero();
        for j in 1..=k {
            let f_j = Rational::new(1.into(), factorial(j + 1));
            acc += f_j * &write[k - j];
        }
        write.push(-acc);
    }
    write[..=upto].to_vec()
}

/// The Bernoulli number `B_n = B_n(0)` (so `B_1 = -1/2`).
pub fn bernoulli_number(n: usize) -> Rational {
    let b = scaled_numbers(n);
    Rational::from_integer(factorial(n)) * &b[n]
}

/// `B_n(x)`, memoized per degree.
pub fn bernoulli_poly(n: usize) -> Arc<BernoulliPolynomial> {
    static CACHE: OnceLock<RwLock<Vec<Option<Arc<BernoulliPolynomial>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(Vec::new()));
    if let Some(Some(p)) = cache.read().expect("bernoulli cache poisoned").get(n) {
        return Arc::clone(p);
    }
    // B_n(x)/n! = sum_k b_k x^(n-k)/(n-k)!
    let b = scaled_numbers(n);
    let n_fact = factorial(n);
    let coefficients = (0..=n)
        .map(|j| Rational::new(n_fact.clone(), factorial(j)) * &b[n - j])
        .collect();
    let poly = Arc::new(BernoulliPolynomial { coefficients });
    let mut write = cache.write().expect("bernoulli cache poisoned");
    if write.len() <= n {
        write.resize(n + 1, None);
    }
    // Another thread may have filled the slot meanwhile; the values coincide.
    Arc::clone(write[n].get_or_insert(poly))
}

pub fn bernoulli_eval(n: usize, x: &Rational) -> Rational {
    bernoulli_poly(n).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    /// Coefficient of `t^order` in `t e^{tx} / (e^t - 1)`, by long division of
    /// truncated power series. Independent of the table above.
    fn generating_function_oracle(order: usize, x: &Rational) -> Rational {
        let len = order + 1;
        let mut fact = vec![Rational::from_integer(1.into()); len + 2];
        for k in 1..len + 2 {
            fact[k] = &fact[k - 1] * int(k as i64);
        }
        let numer: Vec<Rational> = (0..len)
            .map(|k| crate::exact::pow(x, k as i32) / &fact[k])
            .collect();
        let denom: Vec<Rational> = (0..len).map(|k| int(1) / &fact[k + 1]).collect();
        let mut quotient = vec![Rational::zero(); len];
        for k in 0..len {
            let mut acc = numer[k].clone();
            for j in 1..=k {
                acc -= &denom[j] * &quotient[k - j];
            }
            quotient[k] = acc / &denom[0];
        }
        &quotient[order] * &fact[order]
    }

    #[test]
    fn low_degrees() {
        assert_eq!(bernoulli_poly(0).coefficients(), &[int(1)]);
        assert_eq!(bernoulli_poly(2).coefficients(), &[frac(1, 6), int(-1), int(1)]);
        assert_eq!(bernoulli_number(1), frac(-1, 2));
        assert_eq!(bernoulli_number(12), frac(-691, 2730));
    }

    #[test]
    fn degree_six_matches_generating_function() {
        // frozen from the oracle: x^6 - 3x^5 + 5/2 x^4 - 1/2 x^2 + 1/42
        let expected = [frac(1, 42), int(0), frac(-1, 2), int(0), frac(5, 2), int(-3), int(1)];
        assert_eq!(bernoulli_poly(6).coefficients(), &expected);
        for x in [frac(0, 1), frac(1, 3), frac(-7, 5), frac(11, 2)] {
            assert_eq!(bernoulli_eval(6, &x), generating_function_oracle(6, &x));
        }
    }

    #[test]
    fn oracle_agrees_up_to_twelve() {
        for n in 0..=12 {
            for x in [frac(2, 7), frac(-3, 4)] {
                assert_eq!(bernoulli_eval(n, &x), generating_function_oracle(n, &x), "n={n}");
            }
        }
    }

    #[test]
    fn values_driving_the_worked_examples() {
        assert_eq!(bernoulli_eval(2, &frac(1, 5)), frac(1, 150));
        assert_eq!(bernoulli_eval(2, &frac(2, 5)), frac(-11, 150));
        for n in 0..=12 {
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(bernoulli_eval(n, &int(1)), sign * bernoulli_number(n));
        }
    }

    #[test]
    fn monic() {
        for n in 0..20 {
            assert_eq!(bernoulli_poly(n).coefficient(n), int(1));
            assert_eq!(bernoulli_poly(n).degree(), n);
        }
    }

    #[test]
    fn concurrent_fill_is_consistent() {
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| (0..30).map(bernoulli_number).collect::<Vec<_>>()))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
