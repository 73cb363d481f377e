//! Genus-0, degree-0 Gromov-Witten invariants of `[C^2/mu_r]` with twisted
//! insertions only, as degrees of Chern classes of `R^1 pi_*(T + T^vee)`.

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::grr::{chern_classes, ChernSeries, RootProblem};
use crate::taut::TautClass;

/// Which Chern class of the rank-`(n-2)` bundle `R^1` is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EulerConvention {
    /// `c_{n-3}` of the dual of `R^1 pi_*(T + T^vee)`, i.e.
    /// `(-1)^{n-3} c_{n-3}(-R pi_*(T + T^vee))`.
    #[default]
    Dual,
    /// `c_{n-3}(-R pi_*(T + T^vee))` with no sign correction.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GWQuery {
    r: u32,
    counts: Vec<usize>,
}

impl GWQuery {
    /// `counts[j]` is the number of insertions of the sector `j`.
    pub fn new(r: u32, counts: Vec<usize>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidOrder { r, min: 2 });
        }
        if counts.len() != r as usize {
            return Err(Error::Inadmissible(format!(
                "expected {r} counts (n_0..n_{}), got {}",
                r - 1,
                counts.len()
            )));
        }
        if counts[0] > 0 {
            return Err(Error::UntwistedInsertions(counts[0]));
        }
        let n: usize = counts.iter().sum();
        let weighted: usize = counts.iter().enumerate().map(|(j, &c)| j * c).sum();
        let mut violated = Vec::new();
        if n <= 3 {
            violated.push(format!("sum of n_j = {n} must exceed 3"));
        }
        if !weighted.is_multiple_of(r as usize) {
            violated.push(format!(
                "sum of j*n_j = {weighted} is not divisible by r = {r}"
            ));
        }
        if !violated.is_empty() {
            return Err(Error::Inadmissible(violated.join("; ")));
        }
        Ok(Self { r, counts })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Twists `m_i`: sector `j` repeated `n_j` times, in increasing order.
    pub fn twists(&self) -> Vec<i64> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(j, &c)| std::iter::repeat_n(j as i64, c))
            .collect()
    }

    /// The query with sectors `j` and `r - j` exchanged.
    pub fn conjugate(&self) -> Self {
        let mut counts = self.counts.clone();
        counts[1..].reverse();
        Self {
            r: self.r,
            counts,
        }
    }
}

/// Root problems for `T` and for `T^vee(-sum x_i)`.
pub fn build_root_data(query: &GWQuery) -> Result<(RootProblem, RootProblem)> {
    let first = RootProblem::genus0(query.r, 0, query.twists())?;
    let second = first.dual();
    Ok((first, second))
}

/// `ch` series of `R pi_*(T + T^vee)` up to degree `n - 3`.
pub fn direct_sum_series(query: &GWQuery) -> Result<ChernSeries> {
    let (first, second) = build_root_data(query)?;
    let k = query.n() - 3;
    let a = ChernSeries::compute(&first, k)?;
    let b = ChernSeries::compute(&second, k)?;
    a.direct_sum(&b)
}

/// Degree-`(n-3)` Chern class whose weighted degree is the invariant.
pub fn gw_class(query: &GWQuery, convention: EulerConvention) -> Result<TautClass> {
    let series = direct_sum_series(query)?;
    let k = query.n() - 3;
    let class = chern_classes(&series, k)?
        .pop()
        .ok_or_else(|| Error::Internal("empty Chern class list".into()))?;
    Ok(match convention {
        EulerConvention::Direct => class,
        EulerConvention::Dual if k % 2 == 1 => -&class,
        EulerConvention::Dual => class,
    })
}

/// Coefficient of `t_1 + t_2` in the equivariant invariant.
pub fn gw_invariant(query: &GWQuery) -> Result<Rational> {
    gw_invariant_with(query, EulerConvention::default())
}

pub fn gw_invariant_with(query: &GWQuery, convention: EulerConvention) -> Result<Rational> {
    Ok(gw_class(query, convention)?.integrate_weighted(query.r))
}

/// Ranks of `R^1` for `T` and for `T^vee(-sum x_i)`; these sum to `n - 2`.
pub fn r1_ranks(query: &GWQuery) -> Result<(Rational, Rational)> {
    let (first, second) = build_root_data(query)?;
    Ok((-first.euler_characteristic(), -second.euler_characteristic()))
}

/// All admissible queries for `r` with `4 <= n <= max_n`, ordered by `n`
/// and then by counts.
pub fn admissible_queries(r: u32, max_n: usize) -> Result<Vec<GWQuery>> {
    if r < 2 {
        return Err(Error::InvalidOrder { r, min: 2 });
    }
    let mut out = Vec::new();
    for n in 4..=max_n {
        for twisted in crate::taut::compositions(n as u32, r as usize - 1) {
            let mut counts = vec![0usize];
            counts.extend(twisted.iter().map(|&c| c as usize));
            if let Ok(q) = GWQuery::new(r, counts) {
                out.push(q);
            }
        }
    }
    out.sort_by(|a, b| a.n().cmp(&b.n()).then_with(|| a.counts.cmp(&b.counts)));
    Ok(out)
}

/// Invariants of every admissible query up to `max_n`.
pub fn gw_table(r: u32, max_n: usize) -> Result<Vec<(GWQuery, Rational)>> {
    let queries = admissible_queries(r, max_n)?;
    let values = crate::par::map_collect(&queries, gw_invariant);
    queries
        .into_iter()
        .zip(values)
        .map(|(q, v)| v.map(|v| (q, v)))
        .collect()
}
