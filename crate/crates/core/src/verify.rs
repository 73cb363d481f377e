//! Self-checks runnable from the command line. Each suite evaluates a list
//! of named identities exactly and reports pass/fail per check.

use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cyclo::{cyclo_sum, cyclo_sum_closed_form, geometric_coeff_check, series_bridge_check};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_eval, binomial, frac, int, pow, sum_q_rminusq, Rational};
use crate::grr::{
    ch_term, ch_term_with, genus1_onepoint_degree, multiplicity_index, BoundaryConvention,
    ChernSeries, RootProblem,
};
use crate::gw::{admissible_queries, gw_invariant, r1_ranks, GWQuery};
use crate::rspin::{elsv_genus0, hurwitz_oracle, w11, w_number_genus0};
use crate::taut::{
    compositions, integrate, integrate_weighted, kappa_class, psi_class, stable_sides,
    stable_splits, NodeClass, TautClass,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bernoulli,
    Cyclotomic,
    Taut,
    Examples,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli" => Ok(Suite::Bernoulli),
            "cyclotomic" => Ok(Suite::Cyclotomic),
            "taut" => Ok(Suite::Taut),
            "examples" => Ok(Suite::Examples),
            "all" => Ok(Suite::All),
            other => Err(Error::Inadmissible(format!("unknown suite {other:?}"))),
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Bernoulli => "bernoulli",
            Suite::Cyclotomic => "cyclotomic",
            Suite::Taut => "taut",
            Suite::Examples => "examples",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, result: Result<Option<String>>) -> Self {
        match result {
            Ok(None) => Self::new(name, true, ""),
            Ok(Some(why)) => Self::new(name, false, why),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn run(suite: Suite) -> Vec<Report> {
    match suite {
        Suite::Bernoulli => vec![bernoulli_suite()],
        Suite::Cyclotomic => vec![cyclotomic_suite()],
        Suite::Taut => vec![taut_suite()],
        Suite::Examples => vec![examples_suite()],
        Suite::All => vec![
            bernoulli_suite(),
            cyclotomic_suite(),
            taut_suite(),
            examples_suite(),
        ],
    }
}

fn mismatch(what: impl std::fmt::Display, got: &Rational, want: &Rational) -> Option<String> {
    (got != want).then(|| format!("{what}: got {got}, expected {want}"))
}

fn first_failure(items: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    items.into_iter().flatten().next()
}

/// Deterministic rationals with numerators and denominators below 100.
pub fn sample_rationals(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = (rng.next_u64() % 199) as i64 - 99;
            let q = (rng.next_u64() % 99) as i64 + 1;
            frac(p, q)
        })
        .collect()
}

fn bernoulli_number(n: usize) -> Rational {
    bernoulli_eval(n, &int(0))
}

pub fn bernoulli_suite() -> Report {
    let xs = sample_rationals(1, 50);
    let ys = sample_rationals(2, 50);
    let mut checks = Vec::new();

    checks.push(Check::from_result("recursion", Ok(first_failure((0..=12usize).flat_map(|n| {
        xs.iter().zip(&ys).map(move |(x, y)| {
            let lhs = bernoulli_eval(n, &(x + y));
            let rhs = (0..=n).fold(int(0), |acc, m| {
                acc + Rational::from_integer(binomial(n, m))
                    * bernoulli_eval(m, x)
                    * pow(y, (n - m) as i32)
            });
            mismatch(format!("B_{n}({x}+{y})"), &lhs, &rhs)
        })
    })))));

    checks.push(Check::from_result("reflection", Ok(first_failure((0..=12usize).flat_map(|n| {
        xs.iter().map(move |x| {
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            let rhs = sign * bernoulli_eval(n, &(int(1) - x));
            mismatch(format!("B_{n}({x})"), &bernoulli_eval(n, x), &rhs)
        })
    })))));

    checks.push(Check::from_result("difference", Ok(first_failure((1..=12usize).flat_map(|n| {
        xs.iter().map(move |x| {
            let lhs = bernoulli_eval(n, x) - bernoulli_eval(n, &(x + int(1)));
            let rhs = -int(n as i64) * pow(x, n as i32 - 1);
            mismatch(format!("n={n} x={x}"), &lhs, &rhs)
        })
    })))));

    checks.push(Check::from_result("carlitz", Ok(first_failure((0..=8usize).flat_map(|a| {
        (0..=8usize).map(move |b| {
            let side = |p: usize, q: usize| {
                let sign = if p.is_multiple_of(2) { int(1) } else { int(-1) };
                sign * (0..=p).fold(int(0), |acc, i| {
                    acc + Rational::from_integer(binomial(p, i)) * bernoulli_number(i + q)
                })
            };
            mismatch(format!("alpha={a} beta={b}"), &side(a, b), &side(b, a))
        })
    })))));

    checks.push(Check::from_result("endpoint", Ok(first_failure((0..=12usize).map(|n| {
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        mismatch(format!("B_{n}(1)"), &bernoulli_eval(n, &int(1)), &(sign * bernoulli_number(n)))
    })))));

    checks.push(Check::from_result("sum_q_rminusq", Ok(first_failure((1..=50u32).map(|r| {
        let ri = i64::from(r);
        mismatch(format!("r={r}"), &sum_q_rminusq(r), &frac((ri - 1) * ri * (ri + 1), 6))
    })))));

    checks.push(Check::from_result("values", Ok(first_failure([
        mismatch("B_2(1/5)", &bernoulli_eval(2, &frac(1, 5)), &frac(1, 150)),
        mismatch("B_2(2/5)", &bernoulli_eval(2, &frac(2, 5)), &frac(-11, 150)),
        mismatch("B_12", &bernoulli_number(12), &frac(-691, 2730)),
    ]))));

    Report {
        suite: "bernoulli",
        checks,
    }
}

pub fn cyclotomic_suite() -> Report {
    let mut checks = Vec::new();
    checks.push(Check::from_result(
        "cyclo_sum",
        (|| {
            for r in 2..=12 {
                for q in 0..r {
                    let got = cyclo_sum(r, q)?;
                    if let Some(why) = mismatch(format!("r={r} q={q}"), &got, &cyclo_sum_closed_form(r, q)) {
                        return Ok(Some(why));
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "cyclo_sum_total",
        (|| {
            for r in 2..=12u32 {
                let mut total = int(0);
                for q in 0..r {
                    total += cyclo_sum(r, q)?;
                }
                let ri = i64::from(r);
                let want = frac(ri * (ri * ri - 1), 12) - sum_q_rminusq(r) / int(2);
                if let Some(why) = mismatch(format!("r={r}"), &total, &want) {
                    return Ok(Some(why));
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "series_bridge",
        (|| {
            for r in 2..=8 {
                for q in 0..r {
                    if !series_bridge_check(r, q, 10)? {
                        return Ok(Some(format!("r={r} q={q}")));
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "geometric_coefficients",
        (|| {
            for r in 2..=12 {
                if !geometric_coeff_check(r)? {
                    return Ok(Some(format!("r={r}")));
                }
            }
            Ok(None)
        })(),
    ));
    Report {
        suite: "cyclotomic",
        checks,
    }
}

/// `int_{M_{0,n}} prod psi_i^{a_i}` by the string equation alone.
pub fn string_equation_integral(exps: &[u32]) -> Rational {
    let n = exps.len();
    let total: u32 = exps.iter().sum();
    if n < 3 || total as usize + 3 != n {
        return int(0);
    }
    if n == 3 {
        return int(1);
    }
    let Some(free) = exps.iter().position(|&a| a == 0) else {
        return int(0);
    };
    let rest: Vec<u32> = exps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != free)
        .map(|(_, &a)| a)
        .collect();
    (0..rest.len())
        .filter(|&j| rest[j] > 0)
        .map(|j| {
            let mut lowered = rest.clone();
            lowered[j] -= 1;
            string_equation_integral(&lowered)
        })
        .fold(int(0), |a, b| a + b)
}

pub fn taut_suite() -> Report {
    let mut checks = Vec::new();
    checks.push(Check::from_result("string_equation", Ok(first_failure((3..=8usize).flat_map(|n| {
        compositions(n as u32 - 3, n).into_iter().map(|exps| {
            let got = integrate(&TautClass::psi_monomial(&exps));
            mismatch(format!("{exps:?}"), &got, &string_equation_integral(&exps))
        })
    })))));
    checks.push(Check::from_result(
        "boundary_excess",
        (|| {
            let d12 = TautClass::boundary_divisor(5, &[1, 2])?;
            let psi_side = TautClass::boundary_pushforward(5, &[1, 2], &NodeClass::monomial(1, 0, int(1)))?;
            let psi_hat = TautClass::boundary_pushforward(5, &[1, 2], &NodeClass::monomial(0, 1, int(1)))?;
            Ok(first_failure([
                mismatch("D_{12}^2", &integrate(&d12.mul(&d12)?), &int(-1)),
                mismatch("D_{12} psi", &integrate(&psi_side), &int(0)),
                mismatch("D_{12} psi_hat", &integrate(&psi_hat), &int(1)),
                mismatch("D_{12|34}", &integrate(&TautClass::boundary_divisor(4, &[1, 2])?), &int(1)),
            ]))
        })(),
    ));
    checks.push(Check::from_result(
        "keel_relation",
        (|| {
            let n = 5;
            let mut rel = psi_class(n, 1)?;
            for side in stable_sides(n) {
                if side.contains(&1) && !side.contains(&2) && !side.contains(&3) {
                    rel = &rel - &TautClass::boundary_divisor(n, &side)?;
                }
            }
            let mut tests: Vec<TautClass> = (1..=n).map(|j| psi_class(n, j)).collect::<Result<_>>()?;
            for s in stable_splits(n) {
                tests.push(TautClass::boundary_divisor(n, &s)?);
            }
            tests.push(kappa_class(n, 1)?);
            for t in &tests {
                let value = integrate(&rel.mul(t)?);
                if value != int(0) {
                    return Ok(Some(format!("pairing {value}")));
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "kappa_relation",
        (|| {
            for n in 4..=6usize {
                let mut rel = kappa_class(n, 1)?;
                for i in 1..=n {
                    rel = &rel - &psi_class(n, i)?;
                }
                for s in stable_splits(n) {
                    rel = &rel + &TautClass::boundary_divisor(n, &s)?;
                }
                for exps in compositions(n as u32 - 4, n) {
                    let value = integrate(&rel.mul(&TautClass::psi_monomial(&exps))?);
                    if value != int(0) {
                        return Ok(Some(format!("n={n} {exps:?}: {value}")));
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "weights",
        (|| {
            Ok(first_failure([
                mismatch("D_{12|34}, r=5", &integrate_weighted(&TautClass::boundary_divisor(4, &[1, 2])?, 5), &frac(1, 25)),
                mismatch("psi_1, r=5", &integrate_weighted(&psi_class(4, 1)?, 5), &frac(1, 5)),
            ]))
        })(),
    ));
    checks.push(Check::from_result(
        "four_point_degrees",
        (|| {
            for i in 1..=4 {
                if integrate(&psi_class(4, i)?) != int(1) {
                    return Ok(Some(format!("psi_{i}")));
                }
            }
            for side in stable_splits(4) {
                if integrate(&TautClass::boundary_divisor(4, &side)?) != int(1) {
                    return Ok(Some(format!("D_{side:?}")));
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "product_algebra",
        (|| {
            let n = 6;
            let mut gens: Vec<TautClass> = vec![psi_class(n, 1)?, kappa_class(n, 1)?];
            for side in stable_splits(n).into_iter().take(4) {
                gens.push(TautClass::boundary_divisor(n, &side)?);
            }
            for a in &gens {
                for b in &gens {
                    if a.mul(b)? != b.mul(a)? {
                        return Ok(Some("commutativity".into()));
                    }
                    for c in &gens {
                        if a.mul(b)?.mul(c)? != a.mul(&b.mul(c)?)? {
                            return Ok(Some("associativity".into()));
                        }
                        if a.mul(&(b + c))? != &a.mul(b)? + &a.mul(c)? {
                            return Ok(Some("distributivity".into()));
                        }
                    }
                }
            }
            Ok(None)
        })(),
    ));
    Report {
        suite: "taut",
        checks,
    }
}

/// Expected `ch_1` of a genus-0, `s = 0`, four-point problem from its four
/// scalar coefficients (kappa, psi_{1..3}, psi_4, each boundary point).
pub fn four_point_ch1(coefficients: [Rational; 4]) -> Result<TautClass> {
    let [k, p, p4, b] = coefficients;
    let mut c = kappa_class(4, 1)?.scaled(&k);
    for i in 1..=3 {
        c.add_assign_scaled(&psi_class(4, i)?, &p);
    }
    c.add_assign_scaled(&psi_class(4, 4)?, &p4);
    for side in stable_splits(4) {
        c.add_assign_scaled(&TautClass::boundary_divisor(4, &side)?, &b);
    }
    Ok(c)
}

/// Every `m` in `1..r` with `n` entries satisfying the `s = 0` degree
/// condition, at most `limit` of them, spread evenly over the full list.
pub fn dual_identity_cases(r: u32, n: usize, limit: usize) -> Vec<Vec<i64>> {
    let mut all = Vec::new();
    let mut m = vec![1i64; n];
    loop {
        if m.iter().sum::<i64>() % i64::from(r) == 0 {
            all.push(m.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return spread(all, limit);
            }
            m[i] += 1;
            if m[i] < i64::from(r) {
                break;
            }
            m[i] = 1;
            i += 1;
        }
    }
}

fn spread<T>(items: Vec<T>, limit: usize) -> Vec<T> {
    if items.len() <= limit || limit == 0 {
        return items;
    }
    let step = items.len() as f64 / limit as f64;
    let wanted: Vec<usize> = (0..limit).map(|j| (j as f64 * step) as usize).collect();
    items
        .into_iter()
        .enumerate()
        .filter(|(i, _)| wanted.binary_search(i).is_ok())
        .map(|(_, x)| x)
        .collect()
}

pub fn dual_identity_check(problem: &RootProblem) -> Result<bool> {
    Ok(ch_term(problem, 1)? == ch_term(&problem.dual(), 1)?)
}

fn timed_gw(counts: &[usize], r: u32, want: Rational, name: &str) -> Check {
    let start = Instant::now();
    let got = GWQuery::new(r, counts.to_vec()).and_then(|q| gw_invariant(&q));
    let elapsed = start.elapsed();
    match got {
        Ok(v) if v == want => Check::new(name, true, format!("{v} in {elapsed:.2?}")),
        Ok(v) => Check::new(name, false, format!("got {v}, expected {want}")),
        Err(e) => Check::new(name, false, format!("error: {e}")),
    }
}

pub fn examples_suite() -> Report {
    let mut checks = vec![
        timed_gw(&[0, 0, 3, 0, 1], 5, frac(2, 25), "gw_example_1"),
        timed_gw(&[0, 3, 1, 0, 0], 5, int(0), "gw_example_2"),
    ];
    checks.push(Check::from_result(
        "ch1_coefficients",
        (|| {
            let ex1 = ch_term(&RootProblem::genus0(5, 0, vec![2, 2, 2, 4])?, 1)?;
            let ex2 = ch_term(&RootProblem::genus0(5, 0, vec![1, 1, 1, 2])?, 1)?;
            let want1 = four_point_ch1([frac(1, 12), frac(11, 300), frac(-1, 300), frac(5, 300)])?;
            let want2 = four_point_ch1([frac(1, 12), frac(-1, 300), frac(11, 300), frac(-55, 300)])?;
            Ok(if ex1 != want1 {
                Some(format!("example 1: {ex1}"))
            } else if ex2 != want2 {
                Some(format!("example 2: {ex2}"))
            } else {
                None
            })
        })(),
    ));
    checks.push(Check::from_result(
        "genus_one",
        (|| {
            for r in 2..=10u32 {
                let ri = i64::from(r);
                if let Some(why) = mismatch(format!("r={r}"), &genus1_onepoint_degree(r), &frac(1 - ri, 24 * ri)) {
                    return Ok(Some(why));
                }
                if let Some(why) = mismatch(format!("W_11 r={r}"), &w11(r)?, &frac(ri - 1, 24)) {
                    return Ok(Some(why));
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "mumford_degeneration",
        (|| {
            for n in 4..=6usize {
                let problem = RootProblem::genus0(1, 1, vec![1; n])?;
                for d in 1..=n - 3 {
                    let ch = ch_term(&problem, d)?;
                    for exps in compositions((n - 3 - d) as u32, n) {
                        let value = integrate(&ch.mul(&TautClass::psi_monomial(&exps))?);
                        if value != int(0) {
                            return Ok(Some(format!("n={n} d={d} {exps:?}: {value}")));
                        }
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "dual_identity",
        (|| {
            let mut cases = 0;
            for r in 2..=7u32 {
                for n in 4..=6usize {
                    for m in dual_identity_cases(r, n, 12) {
                        let problem = RootProblem::genus0(r, 0, m.clone())?;
                        if !dual_identity_check(&problem)? {
                            return Ok(Some(format!("r={r} m={m:?}")));
                        }
                        cases += 1;
                    }
                }
            }
            Ok((cases < 100).then(|| format!("only {cases} cases")))
        })(),
    ));
    checks.push(Check::from_result(
        "boundary_orientation",
        (|| {
            for (r, s, m) in [(3u32, 0i64, vec![1i64, 1, 2, 1, 1]), (5, 1, vec![2, 3, 4, 1, 3])] {
                let problem = RootProblem::genus0(r, s, m)?;
                for d in 1..=2 {
                    let a = ch_term_with(&problem, d, BoundaryConvention::BothOrdersHalved)?;
                    let b = ch_term_with(&problem, d, BoundaryConvention::OneSidePerSplit)?;
                    if a != b {
                        return Ok(Some(format!("r={r} d={d}")));
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "sum_dependence_r3",
        (|| {
            let mut seen: Vec<(usize, Rational)> = Vec::new();
            for query in admissible_queries(3, 7)? {
                let value = gw_invariant(&query)?;
                match seen.iter().find(|(n, _)| *n == query.n()) {
                    Some((_, v)) if *v != value => {
                        return Ok(Some(format!("{:?}: {value} vs {v}", query.counts())));
                    }
                    Some(_) => {}
                    None => seen.push((query.n(), value)),
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "gw_conjugation",
        (|| {
            for r in 2..=5 {
                for query in admissible_queries(r, 6)? {
                    if gw_invariant(&query)? != gw_invariant(&query.conjugate())? {
                        return Ok(Some(format!("r={r} {:?}", query.counts())));
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "elsv_hurwitz",
        (|| {
            for d in 3..=6u32 {
                for n in 3..=d as usize {
                    for b in profiles(d, n) {
                        let (x, y) = (elsv_genus0(&b)?, hurwitz_oracle(&b)?);
                        if let Some(why) = mismatch(format!("{b:?}"), &x, &y) {
                            return Ok(Some(why));
                        }
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "general_r_sum_dependence_fails",
        (|| {
            let a = gw_invariant(&GWQuery::new(5, vec![0, 0, 3, 0, 1])?)?;
            let b = gw_invariant(&GWQuery::new(5, vec![0, 3, 1, 0, 0])?)?;
            Ok((a == b).then(|| format!("both {a}")))
        })(),
    ));
    checks.push(Check::from_result(
        "rank_bookkeeping",
        (|| {
            for r in 2..=5 {
                for query in admissible_queries(r, 6)? {
                    let (a, b) = r1_ranks(&query)?;
                    let want = int(query.n() as i64 - 2);
                    if a + b != want {
                        return Ok(Some(format!("r={r} {:?}", query.counts())));
                    }
                }
            }
            let p = RootProblem::genus0(5, 0, vec![2, 2, 2, 4])?;
            let series = ChernSeries::compute(&p, 1)?;
            Ok(mismatch("rank for (2,2,2,4)", &series.rank(), &int(1)))
        })(),
    ));
    checks.push(Check::from_result(
        "complementary_q",
        (|| {
            for r in 2..=7u32 {
                for n in 4..=6usize {
                    for m in dual_identity_cases(r, n, 6) {
                        let p = RootProblem::genus0(r, 0, m.clone())?;
                        for side in stable_sides(n) {
                            let rest: Vec<usize> = (1..=n).filter(|i| !side.contains(i)).collect();
                            let q = multiplicity_index(&p, &side)? + multiplicity_index(&p, &rest)?;
                            if q % r != 0 {
                                return Ok(Some(format!("r={r} m={m:?} I={side:?}")));
                            }
                        }
                    }
                }
            }
            Ok(None)
        })(),
    ));
    checks.push(Check::from_result(
        "permutation_symmetry",
        (|| {
            for b in [vec![3u32, 2, 1], vec![4, 1, 1, 2], vec![2, 3, 1, 1, 1]] {
                let mut c = b.clone();
                c.reverse();
                if elsv_genus0(&b)? != elsv_genus0(&c)? {
                    return Ok(Some(format!("elsv {b:?}")));
                }
            }
            for (r, k) in [(3u32, vec![5u32, 1, 1, 1]), (4, vec![6, 2, 1, 1]), (3, vec![4, 3, 2, 1, 2])] {
                let mut j = k.clone();
                j.rotate_left(1);
                if w_number_genus0(r, &k)? != w_number_genus0(r, &j)? {
                    return Ok(Some(format!("r-spin r={r} {k:?}")));
                }
            }
            Ok(None)
        })(),
    ));
    Report {
        suite: "examples",
        checks,
    }
}

/// Ordered profiles of `n` positive parts summing to `d`.
pub fn profiles(d: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return Vec::new();
    }
    compositions(d - n as u32, n)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x + 1).collect())
        .collect()
}
