//! Genus-0 r-spin numbers, the descent between Witten-class normalizations,
//! truncations of the r-spin potential, and the genus-0 ELSV formula.
//!
//! Witten's class `c_W(k)` for the r-th root of `omega_log(-sum k_i x_i)` is
//! evaluated as the top Chern class of `-R pi_* S`; at genus 0 the root has
//! no sections on any fibre, so the two agree.

pub mod hurwitz;

use crate::error::{Error, Result};
use crate::exact::{factorial, frac, int, Rational};
use crate::grr::{chern_classes, genus1_onepoint_degree, ChernSeries, RootProblem};
use crate::taut::{compositions, psi_integral, TautClass};

pub use hurwitz::{factorization_count, hurwitz_oracle};

/// Genus-0 spin data `k = r a + m` with `m_i` in `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinQuery {
    r: u32,
    k: Vec<u32>,
}

impl SpinQuery {
    pub fn new(r: u32, k: Vec<u32>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidOrder { r, min: 2 });
        }
        let n = k.len();
        if n < 3 {
            return Err(Error::UnstableModuli { genus: 0, n });
        }
        if k.contains(&0) {
            return Err(Error::InvalidSpinData(format!(
                "indices must be positive, got {k:?}"
            )));
        }
        let sum: i64 = k.iter().map(|&x| i64::from(x)).sum();
        let expected = (n as i64 - 2) * (i64::from(r) + 1);
        if sum != expected {
            return Err(Error::DimensionCondition { sum, expected });
        }
        Ok(Self { r, k })
    }

    /// From the split form `k_i = r a_i + m_i`.
    pub fn from_split(r: u32, m: &[u32], a: &[u32]) -> Result<Self> {
        check_split(m, a, r)?;
        Self::new(r, m.iter().zip(a).map(|(&mi, &ai)| r * ai + mi).collect())
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    /// Canonical `m_i = ((k_i - 1) mod r) + 1`.
    pub fn m(&self) -> Vec<u32> {
        self.k.iter().map(|&k| (k - 1) % self.r + 1).collect()
    }

    /// Canonical `a_i = (k_i - 1) div r`.
    pub fn a(&self) -> Vec<u32> {
        self.k.iter().map(|&k| (k - 1) / self.r).collect()
    }

    fn root_problem(&self, m: &[u32]) -> Result<RootProblem> {
        RootProblem::genus0(self.r, 1, m.iter().map(|&x| i64::from(x)).collect())
    }
}

fn check_split(m: &[u32], a: &[u32], r: u32) -> Result<()> {
    if m.len() != a.len() {
        return Err(Error::InvalidSpinData(format!(
            "m has {} entries but a has {}",
            m.len(),
            a.len()
        )));
    }
    if let Some(&bad) = m.iter().find(|&&x| x == 0 || x > r) {
        return Err(Error::InvalidSpinData(format!(
            "m_i must lie in 1..={r}, got {bad}"
        )));
    }
    Ok(())
}

/// `prod_i r^{a_i} / (m_i (m_i + r) ... (m_i + (a_i - 1) r))`.
pub fn descent_factor(m: &[u32], a: &[u32], r: u32) -> Result<Rational> {
    check_split(m, a, r)?;
    let r = i64::from(r);
    let mut out = int(1);
    for (&mi, &ai) in m.iter().zip(a) {
        for j in 0..i64::from(ai) {
            out *= frac(r, i64::from(mi) + j * r);
        }
    }
    Ok(out)
}

/// Top Chern class of `-R pi_* S` for `S^r = omega_log(-sum m_i x_i)`.
fn witten_class(problem: &RootProblem, degree: usize) -> Result<TautClass> {
    let series = ChernSeries::compute(problem, degree)?;
    let rank = series.rank();
    if rank != int(degree as i64) {
        return Err(Error::Internal(format!(
            "rank {rank} does not match the expected degree {degree}"
        )));
    }
    chern_classes(&series, degree)?
        .pop()
        .ok_or_else(|| Error::Internal("empty Chern class list".into()))
}

/// `W_{0,n}(0, k) = deg c_W(k)`.
pub fn w_number_genus0(r: u32, k: &[u32]) -> Result<Rational> {
    let query = SpinQuery::new(r, k.to_vec())?;
    if query.n() < 4 {
        return Err(Error::InvalidSpinData(format!(
            "at least 4 markings are required, got {}",
            query.n()
        )));
    }
    let problem = query.root_problem(&query.k)?;
    let class = witten_class(&problem, query.n() - 3)?;
    Ok(class.integrate_weighted(r))
}

/// `W_{0,n}(m, a) = int psi^a c_W(m)`, evaluated directly with `m_i <= r`.
pub fn w_number_with_descendants(r: u32, m: &[u32], a: &[u32]) -> Result<Rational> {
    let query = SpinQuery::from_split(r, m, a)?;
    let n = query.n();
    let descendants: usize = a.iter().map(|&x| x as usize).sum();
    let problem = query.root_problem(m)?;
    let class = witten_class(&problem, n - 3 - descendants)?;
    let psi = TautClass::psi_monomial(a);
    Ok(class.mul_on_roots(&psi, r)?.integrate_weighted(r))
}

/// `W_{1,1}(1, 1) = r W_{1,1}(0, r + 1)`, with the genus-1 degree of
/// `c_1(-R pi_* S)` taken from the hand replay.
pub fn w11(r: u32) -> Result<Rational> {
    if r < 2 {
        return Err(Error::InvalidOrder { r, min: 2 });
    }
    Ok(descent_factor(&[1], &[1], r)? * -genus1_onepoint_degree(r))
}

/// One term of the genus-0 r-spin potential, for an ordered `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialRow {
    pub k: Vec<u32>,
    pub m: Vec<u32>,
    pub a: Vec<u32>,
    /// `deg c_W(k)`.
    pub w_k: Rational,
    /// `W(m, a) = descent_factor * deg c_W(k)`.
    pub w_ma: Rational,
    /// `deg c_W(k)/n! * prod k_i r^{a_i}`, the coefficient of `prod t_{k_i}`.
    pub coefficient: Rational,
    /// `deg c_W(k)/n! * prod k_i r^{floor(k_i/r)}`, the simplified formula
    /// read with `k` in place of `m`.
    pub strict_coefficient: Rational,
    /// Number of distinct orderings of `k`.
    pub orderings: u64,
}

/// Nonincreasing tuples of `n` positive integers with the given sum.
fn partitions(total: u32, n: usize, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let hi = max.min(total.saturating_sub(n as u32 - 1));
    for first in (1..=hi).rev() {
        if first * (n as u32) < total {
            break;
        }
        for mut rest in partitions(total - first, n - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn orderings(k: &[u32]) -> u64 {
    let mut counts = std::collections::BTreeMap::new();
    for &x in k {
        *counts.entry(x).or_insert(0usize) += 1;
    }
    let mut out = factorial(k.len());
    for &c in counts.values() {
        out /= factorial(c);
    }
    u64::try_from(out).unwrap_or(u64::MAX)
}

fn potential_row(r: u32, k: Vec<u32>) -> Result<PotentialRow> {
    let query = SpinQuery::new(r, k)?;
    let (m, a) = (query.m(), query.a());
    let w_k = w_number_genus0(r, query.k())?;
    let w_ma = descent_factor(&m, &a, r)? * &w_k;
    let n_fact = Rational::from_integer(factorial(query.n()));
    let ri = int(i64::from(r));
    let mut weight = int(1);
    let mut strict = int(1);
    for (i, &ki) in query.k().iter().enumerate() {
        let kq = int(i64::from(ki));
        weight *= &kq * crate::exact::pow(&ri, a[i] as i32);
        strict *= &kq * crate::exact::pow(&ri, (ki / r) as i32);
    }
    Ok(PotentialRow {
        orderings: orderings(query.k()),
        coefficient: &w_k / &n_fact * weight,
        strict_coefficient: &w_k / &n_fact * strict,
        k: query.k,
        m,
        a,
        w_k,
        w_ma,
    })
}

/// Genus-0 potential rows for `4 <= n <= n_max`, one per multiset `k`
/// (listed nonincreasing), ordered by `n` and then lexicographically
/// decreasing `k`.
pub fn potential_coefficients(r: u32, n_max: usize) -> Result<Vec<PotentialRow>> {
    if r < 2 {
        return Err(Error::InvalidOrder { r, min: 2 });
    }
    if n_max < 4 {
        return Err(Error::InvalidSpinData(format!(
            "n_max must be at least 4, got {n_max}"
        )));
    }
    let mut ks = Vec::new();
    for n in 4..=n_max {
        let total = (n as u32 - 2) * (r + 1);
        ks.extend(partitions(total, n, total));
    }
    crate::par::map_collect(&ks, |k| potential_row(r, k.clone()))
        .into_iter()
        .collect()
}

/// Genus-0 ELSV: `(d+n-2)! prod b_i^{b_i}/b_i! int 1/prod(1 - b_i psi_i)`.
pub fn elsv_genus0(b: &[u32]) -> Result<Rational> {
    let n = b.len();
    if n < 3 {
        return Err(Error::UnstableModuli { genus: 0, n });
    }
    if b.contains(&0) {
        return Err(Error::InvalidProfile(format!(
            "parts must be positive, got {b:?}"
        )));
    }
    let d: usize = b.iter().map(|&x| x as usize).sum();
    let bq: Vec<Rational> = b.iter().map(|&x| int(i64::from(x))).collect();
    let mut integral = int(0);
    for exps in compositions(n as u32 - 3, n) {
        let mut weight = int(1);
        for (bi, &e) in bq.iter().zip(&exps) {
            weight *= crate::exact::pow(bi, e as i32);
        }
        integral += weight * psi_integral(n, &exps);
    }
    let mut prefactor = Rational::from_integer(factorial(d + n - 2));
    for &x in b {
        let x = x as usize;
        prefactor *= crate::exact::pow(&int(x as i64), x as i32)
            / Rational::from_integer(factorial(x));
    }
    Ok(prefactor * integral)
}
