use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::integral::psi_kappa_integral;
use super::tree::{compatible, edge_key, full_mask, markings, Mask, MarkedTree, MAX_MARKINGS};
use crate::error::{Error, Result};
use crate::exact::{frac, int, Rational};

/// Psi and kappa decorations on a [`MarkedTree`].
///
/// `legs[i]` is the exponent of `psi_{i+1}`; half-edges are keyed by home
/// side; kappa indices are attached to vertex keys and kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration {
    legs: Vec<u32>,
    half_edges: Vec<(Mask, u32)>,
    kappa: Vec<(Mask, Vec<u32>)>,
}

impl Decoration {
    pub fn empty(n: usize) -> Self {
        Self {
            legs: vec![0; n],
            half_edges: Vec::new(),
            kappa: Vec::new(),
        }
    }

    pub fn leg_psi(&self) -> &[u32] {
        &self.legs
    }

    pub fn half_edge_psi(&self) -> &[(Mask, u32)] {
        &self.half_edges
    }

    pub fn vertex_kappa(&self) -> &[(Mask, Vec<u32>)] {
        &self.kappa
    }

    pub fn degree(&self) -> usize {
        let legs: u32 = self.legs.iter().sum();
        let half: u32 = self.half_edges.iter().map(|&(_, e)| e).sum();
        let kappa: u32 = self.kappa.iter().flat_map(|(_, k)| k).sum();
        (legs + half + kappa) as usize
    }

    fn add_half_edge(&mut self, home: Mask, exp: u32) {
        if exp == 0 {
            return;
        }
        match self.half_edges.binary_search_by_key(&home, |&(h, _)| h) {
            Ok(i) => self.half_edges[i].1 += exp,
            Err(i) => self.half_edges.insert(i, (home, exp)),
        }
    }

    fn add_kappa(&mut self, vertex: Mask, index: u32) {
        match self.kappa.binary_search_by_key(&vertex, |(v, _)| *v) {
            Ok(i) => {
                let list = &mut self.kappa[i].1;
                let pos = list.partition_point(|&k| k <= index);
                list.insert(pos, index);
            }
            Err(i) => self.kappa.insert(i, (vertex, vec![index])),
        }
    }
}

/// One basis element: a decorated stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub tree: MarkedTree,
    pub decoration: Decoration,
}

impl Term {
    pub fn degree(&self) -> usize {
        self.tree.num_edges() + self.decoration.degree()
    }

    /// Per-vertex data `(valence, psi exponents, kappa indices)`.
    fn vertex_data(&self, n: usize) -> Vec<(usize, Vec<u32>, Vec<u32>)> {
        let tree = &self.tree;
        let deco = &self.decoration;
        tree.vertices(n)
            .map(|v| {
                let mut psi: Vec<u32> = markings(tree.legs_at(v))
                    .into_iter()
                    .map(|i| deco.legs[i - 1])
                    .collect();
                for home in tree.half_edges_at(v, n) {
                    let exp = deco
                        .half_edges
                        .binary_search_by_key(&home, |&(h, _)| h)
                        .map(|i| deco.half_edges[i].1)
                        .unwrap_or(0);
                    psi.push(exp);
                }
                let kappa = deco
                    .kappa
                    .binary_search_by_key(&v, |(w, _)| *w)
                    .map(|i| deco.kappa[i].1.clone())
                    .unwrap_or_default();
                (tree.valence(v, n), psi, kappa)
            })
            .collect()
    }

    /// True when some vertex carries more degree than its moduli dimension,
    /// which makes the class vanish.
    fn overloaded_vertex(&self, n: usize) -> bool {
        self.vertex_data(n).iter().any(|(val, psi, kappa)| {
            let d: u32 = psi.iter().chain(kappa).sum();
            d as usize + 3 > *val
        })
    }

    fn integrate(&self, n: usize) -> Rational {
        if self.degree() + 3 != n {
            return Rational::zero();
        }
        let mut value = Rational::one();
        for (val, psi, kappa) in self.vertex_data(n) {
            let v = psi_kappa_integral(val, &psi, &kappa);
            if v.is_zero() {
                return v;
            }
            value *= v;
        }
        value
    }
}

/// Polynomial in the node classes `psi` (first branch) and `psi_hat`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeClass {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl NodeClass {
    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn monomial(psi: u32, psi_hat: u32, coeff: Rational) -> Self {
        let mut out = Self::default();
        out.add(psi, psi_hat, coeff);
        out
    }

    pub fn add(&mut self, psi: u32, psi_hat: u32, coeff: Rational) {
        let entry = self.terms.entry((psi, psi_hat)).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(psi, psi_hat));
        }
    }

    /// `gamma_d = sum_{a+b=d} (-psi)^a psi_hat^b`; zero for negative `d`.
    pub fn gamma(d: i64) -> Self {
        let mut out = Self::default();
        if d < 0 {
            return out;
        }
        let d = d as u32;
        for a in 0..=d {
            let sign = if a % 2 == 0 { int(1) } else { int(-1) };
            out.add(a, d - a, sign);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }
}

/// A rational combination of decorated strata of `M_{0,n}`-bar.
#[derive(Clone, PartialEq, Eq)]
pub struct TautClass {
    n: usize,
    terms: BTreeMap<Term, Rational>,
}

impl fmt::Debug for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TautClass(n={}) {self}", self.n)
    }
}

impl TautClass {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_MARKINGS, "at most {MAX_MARKINGS} markings supported");
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_term(
            n,
            Term {
                tree: MarkedTree::trivial(),
                decoration: Decoration::empty(n),
            },
            Rational::one(),
        )
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        Self::one(n).scaled(&c)
    }

    fn from_term(n: usize, term: Term, coeff: Rational) -> Self {
        let mut out = Self::zero(n);
        out.add_term(term, coeff);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Rational)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, term: Term, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(term) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    /// `psi_i` on the trivial tree.
    pub fn psi(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidMarking { index: i, n });
        }
        if n < 3 {
            return Err(Error::UnstableModuli { genus: 0, n });
        }
        let mut deco = Decoration::empty(n);
        deco.legs[i - 1] = 1;
        Ok(Self::from_term(
            n,
            Term {
                tree: MarkedTree::trivial(),
                decoration: deco,
            },
            Rational::one(),
        ))
    }

    /// The monomial `prod psi_i^{a_i}` on the trivial tree.
    pub fn psi_monomial(exponents: &[u32]) -> Self {
        let n = exponents.len();
        let mut deco = Decoration::empty(n);
        deco.legs.copy_from_slice(exponents);
        Self::from_term(
            n,
            Term {
                tree: MarkedTree::trivial(),
                decoration: deco,
            },
            Rational::one(),
        )
    }

    /// Symbolic `kappa_d` on the trivial tree.
    pub fn kappa(n: usize, d: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::UnstableModuli { genus: 0, n });
        }
        let mut deco = Decoration::empty(n);
        deco.add_kappa(full_mask(n), d);
        Ok(Self::from_term(
            n,
            Term {
                tree: MarkedTree::trivial(),
                decoration: deco,
            },
            Rational::one(),
        ))
    }

    /// Pushforward of a node class from the divisor of type `I | I^c`.
    /// The `psi` variable decorates the half-edge on the `I` side.
    pub fn boundary_pushforward(n: usize, side: &[usize], gamma: &NodeClass) -> Result<Self> {
        for &i in side {
            if i == 0 || i > n {
                return Err(Error::InvalidMarking { index: i, n });
            }
        }
        let side_mask = super::tree::mask_of(side);
        let size = side_mask.count_ones() as usize;
        if size < 2 || size + 2 > n {
            return Err(Error::UnstableSplit { size, n });
        }
        let key = edge_key(side_mask, n);
        let tree = MarkedTree::from_sorted_unchecked(vec![key]);
        let other = full_mask(n) ^ side_mask;
        let mut out = Self::zero(n);
        for (&(a, b), c) in gamma.terms() {
            let mut deco = Decoration::empty(n);
            deco.add_half_edge(side_mask, a);
            deco.add_half_edge(other, b);
            out.add_term(
                Term {
                    tree: tree.clone(),
                    decoration: deco,
                },
                c.clone(),
            );
        }
        Ok(out)
    }

    /// The divisor `D_{I | I^c}`.
    pub fn boundary_divisor(n: usize, side: &[usize]) -> Result<Self> {
        Self::boundary_pushforward(n, side, &NodeClass::one())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!(self.n, other.n, "mismatched number of markings");
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v * c);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        Ok(out)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::MismatchedMarkings {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// The part of pure cohomological degree `d`.
    pub fn degree_part(&self, d: usize) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.degree() == d)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops terms that vanish for dimension reasons (total degree above
    /// `n - 3`, or a vertex decorated beyond its own dimension).
    pub fn pruned(mut self) -> Self {
        let n = self.n;
        self.terms
            .retain(|t, _| t.degree() + 3 <= n && !t.overloaded_vertex(n));
        self
    }

    /// Largest degree among the stored terms.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Term::degree).max()
    }

    /// Intersection product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with_excess(other, &-Rational::one())
    }

    /// Product on the moduli of r-th roots, with terms read as classes of
    /// root-stack strata: a tree with `E` edges stands for `r^{-E}` times
    /// the coarse stratum, so each excess edge carries an extra `1/r`.
    /// Together with [`TautClass::integrate_weighted`] this agrees with
    /// multiplying coarse classes and dividing the degree by `r`.
    pub fn mul_on_roots(&self, other: &Self, r: u32) -> Result<Self> {
        self.mul_with_excess(other, &frac(-1, i64::from(r.max(1))))
    }

    /// Reads each term as a root-stack stratum class and returns the
    /// corresponding coarse class (a tree with `E` edges scaled by `r^{-E}`).
    pub fn coarse_from_roots(&self, r: u32) -> Self {
        let r = int(i64::from(r.max(1)));
        let mut out = Self::zero(self.n);
        for (t, c) in &self.terms {
            let weight = crate::exact::pow(&r, -(t.tree.num_edges() as i32));
            out.add_term(t.clone(), c * weight);
        }
        out
    }

    fn mul_with_excess(&self, other: &Self, excess: &Rational) -> Result<Self> {
        self.check_same(other)?;
        let n = self.n;
        let pairs: Vec<(&Term, &Rational)> = self.terms.iter().collect();
        let partials = crate::par::map_collect(&pairs, |&(a, ca)| {
            let mut acc = Self::zero(n);
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for (t, k) in multiply_terms(a, b, n, excess) {
                    acc.add_term(t, &c * k);
                }
            }
            acc
        });
        let mut out = Self::zero(n);
        for p in partials {
            out.add_assign_scaled(&p, &Rational::one());
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Degree on the coarse moduli space.
    pub fn integrate(&self) -> Rational {
        self.terms
            .iter()
            .map(|(t, c)| t.integrate(self.n) * c)
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Degree on the moduli of r-th roots: each term on a tree with `E`
    /// edges is weighted by `r^{-(1+E)}` (generic gerbe plus node stabilizers).
    pub fn integrate_weighted(&self, r: u32) -> Rational {
        let r = int(i64::from(r));
        self.terms
            .iter()
            .map(|(t, c)| {
                let weight = crate::exact::pow(&r, -(1 + t.tree.num_edges() as i32));
                t.integrate(self.n) * c * weight
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl std::ops::Add for &TautClass {
    type Output = TautClass;
    fn add(self, rhs: &TautClass) -> TautClass {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rational::one());
        out
    }
}

impl std::ops::Sub for &TautClass {
    type Output = TautClass;
    fn sub(self, rhs: &TautClass) -> TautClass {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Rational::one());
        out
    }
}

impl std::ops::Neg for &TautClass {
    type Output = TautClass;
    fn neg(self) -> TautClass {
        self.scaled(&-Rational::one())
    }
}

impl std::ops::Mul<&Rational> for &TautClass {
    type Output = TautClass;
    fn mul(self, rhs: &Rational) -> TautClass {
        self.scaled(rhs)
    }
}

/// Product of two decorated strata.
///
/// The strata meet along the tree carrying the union of their edges; each
/// common edge contributes the excess class `-(psi_h + psi_h')`. Kappa
/// classes at a vertex pull back to the sum over the vertices contracting
/// onto it.
fn multiply_terms(a: &Term, b: &Term, n: usize, excess: &Rational) -> Vec<(Term, Rational)> {
    let ea = a.tree.edges();
    let eb = b.tree.edges();
    if !ea.iter().all(|&x| eb.iter().all(|&y| compatible(x, y))) {
        return Vec::new();
    }
    if a.degree() + b.degree() + 3 > n {
        return Vec::new();
    }
    let mut union: Vec<Mask> = ea.iter().chain(eb).copied().collect();
    union.sort_unstable();
    union.dedup();
    let common: Vec<Mask> = ea.iter().copied().filter(|e| b.tree.has_edge(*e)).collect();
    let tree = MarkedTree::from_sorted_unchecked(union);

    let mut base = Decoration::empty(n);
    for i in 0..n {
        base.legs[i] = a.decoration.legs[i] + b.decoration.legs[i];
    }
    for &(h, e) in a.decoration.half_edges.iter().chain(&b.decoration.half_edges) {
        base.add_half_edge(h, e);
    }

    let mut partial: Vec<(Decoration, Rational)> = vec![(base, Rational::one())];
    for (source, deco) in [(&a.tree, &a.decoration), (&b.tree, &b.decoration)] {
        for (v, indices) in &deco.kappa {
            let targets = tree.preimage_of_vertex(source, *v, n);
            for &index in indices {
                let mut next = Vec::with_capacity(partial.len() * targets.len());
                for (d, c) in &partial {
                    for &y in &targets {
                        let mut d = d.clone();
                        d.add_kappa(y, index);
                        next.push((d, c.clone()));
                    }
                }
                partial = next;
            }
        }
    }
    let full = full_mask(n);
    for &e in &common {
        let mut next = Vec::with_capacity(partial.len() * 2);
        for (d, c) in &partial {
            for home in [e, full ^ e] {
                let mut d = d.clone();
                d.add_half_edge(home, 1);
                next.push((d, c * excess));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(decoration, c)| {
            (
                Term {
                    tree: tree.clone(),
                    decoration,
                },
                c,
            )
        })
        .filter(|(t, _)| t.degree() + 3 <= n && !t.overloaded_vertex(n))
        .collect()
}

impl fmt::Display for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for e in t.tree.edges() {
                write!(f, "*D{:?}", markings(*e))?;
            }
            for (i, &a) in t.decoration.legs.iter().enumerate() {
                if a > 0 {
                    write!(f, "*psi{}^{a}", i + 1)?;
                }
            }
            for &(h, a) in &t.decoration.half_edges {
                write!(f, "*psi[h{:?}]^{a}", markings(h))?;
            }
            for (v, ks) in &t.decoration.kappa {
                for k in ks {
                    write!(f, "*kappa{k}[v{:?}]", markings(*v))?;
                }
            }
        }
        Ok(())
    }
}
