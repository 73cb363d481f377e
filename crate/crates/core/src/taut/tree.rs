//! Genus-0 stable trees encoded by their edge splits.
//!
//! Markings `1..=n` are bits `0..n` of a [`Mask`]. Every edge of a tree
//! separates the markings into two sides; the edge is stored as the side
//! that does *not* contain marking 1. These sides form a laminar family, and
//! each vertex is identified by the set of markings below it: the root
//! vertex (the one carrying marking 1) is the full mask, every other vertex
//! is the mask of the edge above it.
//!
//! A half-edge is identified by its *home side*: the set of markings on the
//! side of the edge where the half-edge's vertex lies.

pub type Mask = u32;

/// Upper bound on the number of markings the bitmask encoding supports.
pub const MAX_MARKINGS: usize = 24;

#[inline]
pub fn full_mask(n: usize) -> Mask {
    debug_assert!(n <= MAX_MARKINGS);
    ((1u64 << n) - 1) as Mask
}

#[inline]
pub fn marking_bit(i: usize) -> Mask {
    1 << (i - 1)
}

/// Markings (1-based) contained in `mask`, ascending.
pub fn markings(mask: Mask) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

pub fn mask_of(markings: &[usize]) -> Mask {
    markings.iter().fold(0, |acc, &i| acc | marking_bit(i))
}

/// The stored key of the edge having `side` as one of its two sides.
#[inline]
pub fn edge_key(side: Mask, n: usize) -> Mask {
    if side & 1 == 1 {
        full_mask(n) ^ side
    } else {
        side
    }
}

/// Two splits are compatible iff some pair of their sides is disjoint.
/// For keys (sides avoiding marking 1) this is laminarity.
#[inline]
pub fn compatible(a: Mask, b: Mask) -> bool {
    a & b == 0 || a & b == a || a & b == b
}

/// A stable genus-0 tree with `n` legs, given by its sorted edge keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MarkedTree {
    edges: Vec<Mask>,
}

impl MarkedTree {
    pub fn trivial() -> Self {
        Self { edges: Vec::new() }
    }

    /// Builds a tree from edge keys; `None` if they are not a valid stable tree.
    pub fn from_edges(mut edges: Vec<Mask>, n: usize) -> Option<Self> {
        edges.sort_unstable();
        edges.dedup();
        let full = full_mask(n);
        for (i, &e) in edges.iter().enumerate() {
            if e & 1 == 1 || e & !full != 0 {
                return None;
            }
            if edges[..i].iter().any(|&f| !compatible(e, f)) {
                return None;
            }
        }
        let tree = Self { edges };
        let stable = tree.vertices(n).all(|v| tree.valence(v, n) >= 3);
        stable.then_some(tree)
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<Mask>) -> Self {
        Self { edges }
    }

    pub fn edges(&self) -> &[Mask] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, key: Mask) -> bool {
        self.edges.binary_search(&key).is_ok()
    }

    /// Vertex keys: the root (full mask) first, then one per edge.
    pub fn vertices(&self, n: usize) -> impl Iterator<Item = Mask> + '_ {
        std::iter::once(full_mask(n)).chain(self.edges.iter().copied())
    }

    /// Edges hanging directly below vertex `v`.
    pub fn children(&self, v: Mask) -> impl Iterator<Item = Mask> + '_ {
        self.edges.iter().copied().filter(move |&e| {
            e != v
                && e & v == e
                && !self
                    .edges
                    .iter()
                    .any(|&f| f != e && f != v && f & v == f && f & e == e)
        })
    }

    /// Markings whose leg sits at vertex `v`.
    pub fn legs_at(&self, v: Mask) -> Mask {
        self.children(v).fold(v, |acc, c| acc & !c)
    }

    pub fn valence(&self, v: Mask, n: usize) -> usize {
        let up = usize::from(v != full_mask(n));
        self.legs_at(v).count_ones() as usize + self.children(v).count() + up
    }

    /// Smallest vertex of this tree containing every marking of `set`.
    pub fn smallest_vertex_containing(&self, set: Mask, n: usize) -> Mask {
        self.edges
            .iter()
            .copied()
            .filter(|&e| e & set == set)
            .min_by_key(|e| e.count_ones())
            .unwrap_or_else(|| full_mask(n))
    }

    /// The vertex a half-edge with the given home side is attached to.
    pub fn vertex_of_half_edge(&self, home: Mask, n: usize) -> Mask {
        if home & 1 == 0 {
            home
        } else {
            let e = full_mask(n) ^ home;
            self.edges
                .iter()
                .copied()
                .filter(|&f| f != e && f & e == e)
                .min_by_key(|f| f.count_ones())
                .unwrap_or_else(|| full_mask(n))
        }
    }

    /// Home sides of the half-edges attached to vertex `v`.
    pub fn half_edges_at(&self, v: Mask, n: usize) -> Vec<Mask> {
        let full = full_mask(n);
        let mut out: Vec<Mask> = self.children(v).map(|c| full ^ c).collect();
        if v != full {
            out.push(v);
        }
        out
    }

    /// Vertices of `self` (a refinement of `coarse`) that contract onto the
    /// vertex `v` of `coarse`.
    pub fn preimage_of_vertex(&self, coarse: &MarkedTree, v: Mask, n: usize) -> Vec<Mask> {
        self.vertices(n)
            .filter(|&y| y & v == y && coarse.smallest_vertex_containing(y, n) == v)
            .collect()
    }
}
