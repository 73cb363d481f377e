//! Tautological classes on the moduli of n-pointed genus-0 stable curves.
//!
//! Classes are rational combinations of decorated stable trees: psi powers
//! on legs and half-edges, kappa classes on vertices. Products use the
//! genus-0 excess intersection rule and integrals factor over vertices.

mod class;
mod integral;
mod json;
pub mod tree;

pub use class::{Decoration, NodeClass, TautClass, Term};
pub use integral::{compositions, psi_integral, psi_kappa_integral};
pub use json::{class_to_json, term_to_json};
pub use tree::{MarkedTree, Mask};

use crate::error::Result;
use crate::exact::Rational;

pub fn psi_class(n: usize, i: usize) -> Result<TautClass> {
    TautClass::psi(n, i)
}

pub fn kappa_class(n: usize, d: u32) -> Result<TautClass> {
    TautClass::kappa(n, d)
}

pub fn boundary_pushforward(n: usize, side: &[usize], gamma: &NodeClass) -> Result<TautClass> {
    TautClass::boundary_pushforward(n, side, gamma)
}

pub fn mul(a: &TautClass, b: &TautClass) -> Result<TautClass> {
    a.mul(b)
}

pub fn integrate(c: &TautClass) -> Rational {
    c.integrate()
}

pub fn integrate_weighted(c: &TautClass, r: u32) -> Rational {
    c.integrate_weighted(r)
}

/// All sides `I` with `2 <= |I| <= n - 2`, as sorted marking lists.
pub fn stable_sides(n: usize) -> Vec<Vec<usize>> {
    let full = tree::full_mask(n);
    (1..full)
        .filter(|m: &Mask| {
            let k = m.count_ones() as usize;
            k >= 2 && k + 2 <= n
        })
        .map(tree::markings)
        .collect()
}

/// One side per unordered stable split: the side avoiding marking 1.
pub fn stable_splits(n: usize) -> Vec<Vec<usize>> {
    stable_sides(n)
        .into_iter()
        .filter(|side| side[0] != 1)
        .collect()
}

#[cfg(test)]
mod tests;
