use thiserror::Error;

/// Errors raised by the public operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid marking index {index} for {n} markings")]
    InvalidMarking { index: usize, n: usize },
    #[error("mismatched number of markings: {left} vs {right}")]
    MismatchedMarkings { left: usize, right: usize },
    #[error("mismatched root order: {left} vs {right}")]
    MismatchedOrder { left: u32, right: u32 },
    #[error("unstable split: side of size {size} in {n} markings (need 2 <= |I| <= n-2)")]
    UnstableSplit { size: usize, n: usize },
    #[error("moduli space with {n} markings is unstable at genus {genus}")]
    UnstableModuli { genus: u32, n: usize },
    #[error("degree condition violated: (2g-2+n)s - sum(m) = {value} is not divisible by r = {r}")]
    DegreeCondition { value: i64, r: u32 },
    #[error("r must be at least {min}, got {r}")]
    InvalidOrder { r: u32, min: u32 },
    #[error("the one-pointed genus-1 case requires exactly one marking, got {n}")]
    GenusOneMarkings { n: usize },
    #[error("operation only supports genus 0")]
    GenusNotSupported,
    #[error("Chern character degree {degree} is missing from the series")]
    MissingDegree { degree: usize },
    #[error("inadmissible query: {0}")]
    Inadmissible(String),
    #[error("insertions of the untwisted sector are not supported (n_0 = {0})")]
    UntwistedInsertions(usize),
    #[error("dimension condition violated: sum(k) = {sum}, expected {expected}")]
    DimensionCondition { sum: i64, expected: i64 },
    #[error("invalid spin data: {0}")]
    InvalidSpinData(String),
    #[error("search bound exceeded: degree {degree} > {bound}")]
    SearchBound { degree: u32, bound: u32 },
    #[error("invalid Hurwitz profile: {0}")]
    InvalidProfile(String),
    #[error("invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
