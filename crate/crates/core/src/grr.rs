//! Chern characters of the derived direct image of the universal r-th root.
//!
//! For the r-th root `S` of `(omega_log)^s(-sum m_i x_i)` on genus-0
//! curves, the degree-`d` part of `ch(R pi_* S)` is
//!
//! ```text
//!   B_{d+1}(s/r)/(d+1)! kappa_d - sum_i B_{d+1}(m_i/r)/(d+1)! psi_i^d
//!     + 1/2 sum_I r B_{d+1}(q(I)/r)/(d+1)! (j_I)_* gamma_{d-1}
//! ```
//!
//! where `I` runs over all stable sides, `q(I)` is the multiplicity index of
//! the root at the node's first branch, and `gamma_{d-1}` is
//! `sum_{a+b=d-1} (-psi)^a psi_hat^b` with `psi` on the `I` side.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli_eval, factorial, frac, int, sum_q_rminusq, Rational};
use crate::taut::{self, NodeClass, TautClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusCase {
    Genus0,
    Genus1OnePoint,
}

impl GenusCase {
    pub fn genus(self) -> u32 {
        match self {
            GenusCase::Genus0 => 0,
            GenusCase::Genus1OnePoint => 1,
        }
    }
}

/// Moduli of r-th roots of `(omega_log)^s(-sum m_i x_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootProblem {
    r: u32,
    s: i64,
    m: Vec<i64>,
    genus: GenusCase,
}

impl RootProblem {
    pub fn new(r: u32, s: i64, m: Vec<i64>, genus: GenusCase) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidOrder { r, min: 1 });
        }
        let n = m.len();
        match genus {
            GenusCase::Genus0 if n < 3 => return Err(Error::UnstableModuli { genus: 0, n }),
            GenusCase::Genus1OnePoint if n != 1 => return Err(Error::GenusOneMarkings { n }),
            _ => {}
        }
        if n > taut::tree::MAX_MARKINGS {
            return Err(Error::Inadmissible(format!("too many markings ({n})")));
        }
        let g = i64::from(genus.genus());
        let value = (2 * g - 2 + n as i64) * s - m.iter().sum::<i64>();
        if value.rem_euclid(i64::from(r)) != 0 {
            return Err(Error::DegreeCondition { value, r });
        }
        Ok(Self { r, s, m, genus })
    }

    pub fn genus0(r: u32, s: i64, m: Vec<i64>) -> Result<Self> {
        Self::new(r, s, m, GenusCase::Genus0)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn genus(&self) -> GenusCase {
        self.genus
    }

    /// Degree of the root on a fibre: `((2g-2+n)s - sum m)/r`.
    pub fn fibre_degree(&self) -> Rational {
        let g = i64::from(self.genus.genus());
        let value = (2 * g - 2 + self.n() as i64) * self.s - self.m.iter().sum::<i64>();
        frac(value, i64::from(self.r))
    }

    /// `chi(S) = deg S + 1 - g`.
    pub fn euler_characteristic(&self) -> Rational {
        self.fibre_degree() + int(1 - i64::from(self.genus.genus()))
    }

    /// The root `S^vee(-sum x_i)`: parameters `(r, -s, r - m_i)`.
    pub fn dual(&self) -> Self {
        let r = i64::from(self.r);
        Self {
            r: self.r,
            s: -self.s,
            m: self.m.iter().map(|&mi| r - mi).collect(),
            genus: self.genus,
        }
    }
}

/// `q in {0..r-1}` with `q = s + sum_{i in I} (m_i - s) (mod r)`.
pub fn multiplicity_index(problem: &RootProblem, side: &[usize]) -> Result<u32> {
    if problem.genus != GenusCase::Genus0 {
        return Err(Error::GenusNotSupported);
    }
    let n = problem.n();
    for &i in side {
        if i == 0 || i > n {
            return Err(Error::InvalidMarking { index: i, n });
        }
    }
    if side.len() < 2 || side.len() + 2 > n {
        return Err(Error::UnstableSplit { size: side.len(), n });
    }
    let s = problem.s;
    let total: i64 = s + side.iter().map(|&i| problem.m[i - 1] - s).sum::<i64>();
    Ok(total.rem_euclid(i64::from(problem.r)) as u32)
}

/// How the boundary sum over node orientations is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryConvention {
    /// Sum over every ordered side `I` and halve.
    #[default]
    BothOrdersHalved,
    /// One side per unordered split (the side avoiding marking 1), unhalved.
    OneSidePerSplit,
}

fn bernoulli_coeff(degree: usize, x: Rational) -> Rational {
    bernoulli_eval(degree + 1, &x) / Rational::from_integer(factorial(degree + 1))
}

/// `ch_d(R pi_* S)` for `d >= 1` as a tautological class.
pub fn ch_term(problem: &RootProblem, d: usize) -> Result<TautClass> {
    ch_term_with(problem, d, BoundaryConvention::default())
}

pub fn ch_term_with(
    problem: &RootProblem,
    d: usize,
    convention: BoundaryConvention,
) -> Result<TautClass> {
    if problem.genus != GenusCase::Genus0 {
        return Err(Error::GenusNotSupported);
    }
    if d == 0 {
        return Ok(TautClass::scalar(problem.n(), problem.euler_characteristic()));
    }
    let n = problem.n();
    let r = i64::from(problem.r);
    let mut out = TautClass::zero(n);

    let kappa_coeff = bernoulli_coeff(d, frac(problem.s, r));
    out.add_assign_scaled(&TautClass::kappa(n, d as u32)?, &kappa_coeff);

    for (i, &mi) in problem.m.iter().enumerate() {
        let coeff = bernoulli_coeff(d, frac(mi, r));
        let mut exps = vec![0; n];
        exps[i] = d as u32;
        out.add_assign_scaled(&TautClass::psi_monomial(&exps), &-coeff);
    }

    let gamma = NodeClass::gamma(d as i64 - 1);
    let (sides, weight) = match convention {
        BoundaryConvention::BothOrdersHalved => (taut::stable_sides(n), frac(1, 2)),
        BoundaryConvention::OneSidePerSplit => (taut::stable_splits(n), int(1)),
    };
    for side in sides {
        let q = multiplicity_index(problem, &side)?;
        let coeff = bernoulli_coeff(d, frac(i64::from(q), r)) * int(r) * &weight;
        if coeff.is_zero() {
            continue;
        }
        let stratum = TautClass::boundary_pushforward(n, &side, &gamma)?;
        out.add_assign_scaled(&stratum, &coeff);
    }
    Ok(out.pruned())
}

/// Degree-0 part of the formula, `B_1(s/r) kappa_0 - sum B_1(m_i/r)` with
/// `kappa_0 = n - 2` at genus 0. Agrees with Riemann-Roch.
pub fn ch_degree0_formula(problem: &RootProblem) -> Result<Rational> {
    if problem.genus != GenusCase::Genus0 {
        return Err(Error::GenusNotSupported);
    }
    let r = i64::from(problem.r);
    let kappa0 = int(problem.n() as i64 - 2);
    let mut value = bernoulli_eval(1, &frac(problem.s, r)) * kappa0;
    for &mi in &problem.m {
        value -= bernoulli_eval(1, &frac(mi, r));
    }
    Ok(value)
}

/// Chern character of a sum of root direct images, by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernSeries {
    n: usize,
    r: u32,
    chi: Rational,
    degrees: BTreeMap<usize, TautClass>,
    problems: Vec<RootProblem>,
}

impl ChernSeries {
    /// `ch_1 .. ch_{max_degree}` of `R pi_* S`.
    pub fn compute(problem: &RootProblem, max_degree: usize) -> Result<Self> {
        if problem.genus != GenusCase::Genus0 {
            return Err(Error::GenusNotSupported);
        }
        let wanted: Vec<usize> = (1..=max_degree).collect();
        let classes = crate::par::map_collect(&wanted, |&d| ch_term(problem, d));
        let mut degrees = BTreeMap::new();
        for (d, class) in wanted.into_iter().zip(classes) {
            degrees.insert(d, class?);
        }
        Ok(Self {
            n: problem.n(),
            r: problem.r(),
            chi: problem.euler_characteristic(),
            degrees,
            problems: vec![problem.clone()],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn problems(&self) -> &[RootProblem] {
        &self.problems
    }

    /// `ch_0 = chi`.
    pub fn euler_characteristic(&self) -> &Rational {
        &self.chi
    }

    /// Rank of `-R pi_* S`, i.e. `-chi`.
    pub fn rank(&self) -> Rational {
        -self.chi.clone()
    }

    pub fn ch(&self, d: usize) -> Option<&TautClass> {
        self.degrees.get(&d)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.keys().copied().max().unwrap_or(0)
    }

    /// Chern character of the direct sum (degree-wise sum); degrees present
    /// in only one summand are dropped.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::MismatchedMarkings {
                left: self.n,
                right: other.n,
            });
        }
        if self.r != other.r {
            return Err(Error::MismatchedOrder {
                left: self.r,
                right: other.r,
            });
        }
        let mut degrees = BTreeMap::new();
        for (d, a) in &self.degrees {
            if let Some(b) = other.degrees.get(d) {
                degrees.insert(*d, a.checked_add(b)?);
            }
        }
        let mut problems = self.problems.clone();
        problems.extend(other.problems.iter().cloned());
        Ok(Self {
            n: self.n,
            r: self.r,
            chi: &self.chi + &other.chi,
            degrees,
            problems,
        })
    }
}

/// Chern classes `c_0, .., c_k` of the class `-R pi_* S`, from Newton's
/// identities with power sums `p_d = -d! ch_d(R pi_* S)`. Products are
/// taken on the moduli of roots (see [`TautClass::mul_on_roots`]).
pub fn chern_classes(series: &ChernSeries, k: usize) -> Result<Vec<TautClass>> {
    let n = series.n;
    let mut power_sums = Vec::with_capacity(k);
    for d in 1..=k {
        let ch = series.ch(d).ok_or(Error::MissingDegree { degree: d })?;
        power_sums.push(ch.scaled(&-Rational::from_integer(factorial(d))));
    }
    let mut c = vec![TautClass::one(n)];
    for j in 1..=k {
        let mut acc = TautClass::zero(n);
        for i in 1..=j {
            let sign = if i % 2 == 1 { int(1) } else { int(-1) };
            let term = c[j - i].mul_on_roots(&power_sums[i - 1], series.r)?;
            acc.add_assign_scaled(&term, &sign);
        }
        c.push(acc.scaled(&frac(1, j as i64)));
    }
    Ok(c)
}

/// `c_k(-R pi_* S)`.
pub fn chern_classes_from_ch(series: &ChernSeries, k: usize) -> Result<TautClass> {
    Ok(chern_classes(series, k)?.pop().expect("c_0 is always present"))
}

/// Degree `k` part of the product of two total Chern classes on the
/// moduli of r-th roots.
pub fn product_of_totals(
    a: &[TautClass],
    b: &[TautClass],
    k: usize,
    r: u32,
) -> Result<TautClass> {
    let n = a.first().map(TautClass::n).unwrap_or(0);
    let mut out = TautClass::zero(n);
    for i in 0..=k {
        if let (Some(x), Some(y)) = (a.get(i), b.get(k - i)) {
            out.add_assign_scaled(&x.mul_on_roots(y, r)?, &Rational::one());
        }
    }
    Ok(out)
}

/// Degree of `ch_1(R pi_* S)` on the one-pointed genus-1 moduli of r-th
/// roots of `omega_log(-(r+1) x_1)`, replaying the hand computation:
/// `kappa_1 = psi_1`, `deg psi_1 = 1/24` downstairs, the cover has degree
/// `r`, each nonseparating component pushes forward with degree 1 and the
/// boundary point has degree `1/r` (twice `1/(2r)`).
pub fn genus1_onepoint_degree(r: u32) -> Rational {
    assert!(r >= 1, "r must be positive");
    let ri = i64::from(r);
    let rq = int(ri);
    // psi part: (B_2(1/r) - B_2(1 + 1/r))/2 psi_1
    let psi_coeff =
        (bernoulli_eval(2, &frac(1, ri)) - bernoulli_eval(2, &frac(ri + 1, ri))) * frac(1, 2);
    let deg_cover = rq.clone();
    let deg_psi = frac(1, 24);
    let psi_part = psi_coeff * deg_cover * deg_psi;
    // nonseparating part: (1/4) sum_q r B_2(q/r) j_{q*}(1), with
    // B_2(q/r) = 1/6 - q(r-q)/r^2 and deg j_{q*}(1) = 1/r
    let sum_b2 = frac(ri, 6) - sum_q_rminusq(r) / (&rq * &rq);
    let deg_boundary = frac(1, ri);
    let boundary_part = frac(1, 4) * &rq * sum_b2 * deg_boundary;
    psi_part + boundary_part
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taut::{integrate, integrate_weighted, stable_splits};

    fn p(r: u32, s: i64, m: &[i64]) -> RootProblem {
        RootProblem::genus0(r, s, m.to_vec()).unwrap()
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            RootProblem::genus0(5, 0, vec![2, 2, 2, 3]),
            Err(Error::DegreeCondition { value: -9, r: 5 })
        ));
        assert!(RootProblem::genus0(5, 0, vec![2, 3]).is_err());
        assert!(RootProblem::new(3, 1, vec![4, 1], GenusCase::Genus1OnePoint).is_err());
        assert!(RootProblem::new(3, 1, vec![4], GenusCase::Genus1OnePoint).is_ok());
        assert!(RootProblem::genus0(0, 0, vec![0, 0, 0]).is_err());
    }

    #[test]
    fn multiplicity_indices_of_worked_examples() {
        let ex1 = p(5, 0, &[2, 2, 2, 4]);
        assert_eq!(multiplicity_index(&ex1, &[1, 2]).unwrap(), 4);
        assert_eq!(multiplicity_index(&ex1, &[1, 2, 3]).unwrap_err(), Error::UnstableSplit { size: 3, n: 4 });
        let ex2 = p(5, 0, &[1, 1, 1, 2]);
        assert_eq!(multiplicity_index(&ex2, &[1, 2]).unwrap(), 2);
        let five = p(5, 0, &[2, 2, 2, 4, 0]);
        assert_eq!(multiplicity_index(&five, &[1, 2, 3]).unwrap(), 1);
        for side in crate::taut::stable_sides(4) {
            let q = multiplicity_index(&ex1, &side).unwrap();
            assert!(q == 1 || q == 4);
        }
    }

    #[test]
    fn complementary_indices_cancel_when_s_is_zero() {
        for r in 2..=7u32 {
            for n in 4..=6usize {
                let mut m = vec![1i64; n];
                let total: i64 = m.iter().sum();
                m[0] += (i64::from(r) - total.rem_euclid(i64::from(r))) % i64::from(r);
                let prob = p(r, 0, &m);
                for side in crate::taut::stable_sides(n) {
                    let comp: Vec<usize> = (1..=n).filter(|i| !side.contains(i)).collect();
                    let q = multiplicity_index(&prob, &side).unwrap();
                    let qc = multiplicity_index(&prob, &comp).unwrap();
                    assert_eq!((q + qc) % r, 0);
                }
            }
        }
    }

    #[test]
    fn degree_zero_is_riemann_roch() {
        for (r, s, m) in [
            (5u32, 0i64, vec![2i64, 2, 2, 4]),
            (5, 0, vec![1, 1, 1, 2]),
            (3, 1, vec![2, 2, 2, 3, 3]),
            (1, 1, vec![1, 1, 1, 1]),
        ] {
            let prob = p(r, s, &m);
            assert_eq!(ch_degree0_formula(&prob).unwrap(), prob.euler_characteristic());
        }
        let ex1 = ChernSeries::compute(&p(5, 0, &[2, 2, 2, 4]), 1).unwrap();
        assert_eq!(ex1.rank(), int(1));
    }

    #[test]
    fn first_worked_example_coefficients() {
        let prob = p(5, 0, &[2, 2, 2, 4]);
        let ch1 = ch_term(&prob, 1).unwrap();
        let mut expected = TautClass::kappa(4, 1).unwrap().scaled(&frac(1, 12));
        for i in 1..=3 {
            expected.add_assign_scaled(&TautClass::psi(4, i).unwrap(), &frac(11, 300));
        }
        expected.add_assign_scaled(&TautClass::psi(4, 4).unwrap(), &frac(-1, 300));
        for side in stable_splits(4) {
            expected.add_assign_scaled(&TautClass::boundary_divisor(4, &side).unwrap(), &frac(5, 300));
        }
        assert_eq!(ch1, expected);
        assert_eq!(integrate_weighted(&ch1, 5), frac(1, 25));
    }

    #[test]
    fn second_worked_example_coefficients() {
        let prob = p(5, 0, &[1, 1, 1, 2]);
        let ch1 = ch_term(&prob, 1).unwrap();
        let mut expected = TautClass::kappa(4, 1).unwrap().scaled(&frac(1, 12));
        for i in 1..=3 {
            expected.add_assign_scaled(&TautClass::psi(4, i).unwrap(), &frac(-1, 300));
        }
        expected.add_assign_scaled(&TautClass::psi(4, 4).unwrap(), &frac(11, 300));
        for side in stable_splits(4) {
            expected.add_assign_scaled(&TautClass::boundary_divisor(4, &side).unwrap(), &frac(-55, 300));
        }
        assert_eq!(ch1, expected);
        assert_eq!(integrate_weighted(&ch1, 5), int(0));
    }

    #[test]
    fn ordering_convention_is_irrelevant() {
        for (r, s, m) in [
            (3u32, 0i64, vec![1i64, 1, 2, 1, 1]),
            (5, 1, vec![2, 3, 4, 1, 3]),
            (4, 0, vec![1, 3, 2, 2, 1, 3]),
        ] {
            let prob = p(r, s, &m);
            for d in 1..=3 {
                assert_eq!(
                    ch_term_with(&prob, d, BoundaryConvention::BothOrdersHalved).unwrap(),
                    ch_term_with(&prob, d, BoundaryConvention::OneSidePerSplit).unwrap(),
                );
            }
        }
    }

    #[test]
    fn mumford_degeneration_vanishes() {
        for n in 4..=6usize {
            let prob = p(1, 1, &vec![1; n]);
            for d in 1..=(n - 3) {
                let ch = ch_term(&prob, d).unwrap();
                for exps in crate::taut::compositions((n - 3 - d) as u32, n) {
                    let mono = TautClass::psi_monomial(&exps);
                    assert_eq!(integrate(&ch.mul(&mono).unwrap()), int(0), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn newton_low_degrees() {
        let prob = p(3, 0, &[1, 1, 2, 1, 1]);
        let series = ChernSeries::compute(&prob, 2).unwrap();
        let c = chern_classes(&series, 2).unwrap();
        let ch1 = series.ch(1).unwrap();
        let ch2 = series.ch(2).unwrap();
        assert_eq!(c[1], -ch1);
        let p2 = ch2.scaled(&int(-2));
        let c1sq = c[1].mul_on_roots(&c[1], 3).unwrap();
        assert_eq!(c[2], (&c1sq - &p2).scaled(&frac(1, 2)));
        assert!(matches!(chern_classes(&series, 3), Err(Error::MissingDegree { degree: 3 })));
    }

    #[test]
    fn total_chern_class_is_multiplicative() {
        let a = p(3, 0, &[1, 1, 1, 2, 1]);
        let b = p(3, 0, &[2, 2, 2, 1, 2]);
        let sa = ChernSeries::compute(&a, 2).unwrap();
        let sb = ChernSeries::compute(&b, 2).unwrap();
        let sum = sa.direct_sum(&sb).unwrap();
        let ca = chern_classes(&sa, 2).unwrap();
        let cb = chern_classes(&sb, 2).unwrap();
        let cs = chern_classes(&sum, 2).unwrap();
        for (k, c) in cs.iter().enumerate() {
            assert_eq!(*c, product_of_totals(&ca, &cb, k, 3).unwrap(), "k={k}");
        }
    }

    #[test]
    fn genus_one_replay() {
        assert_eq!(genus1_onepoint_degree(1), int(0));
        assert_eq!(genus1_onepoint_degree(2), frac(-1, 48));
        for r in 1..=10u32 {
            let ri = i64::from(r);
            assert_eq!(genus1_onepoint_degree(r), frac(1 - ri, 24 * ri));
        }
    }

    #[test]
    fn genus_one_rejected_by_general_engine() {
        let prob = RootProblem::new(3, 1, vec![4], GenusCase::Genus1OnePoint).unwrap();
        assert_eq!(ch_term(&prob, 1).unwrap_err(), Error::GenusNotSupported);
    }
}
