//! Exact Chern characters of universal r-th roots on moduli of curves.
//!
//! The crate assembles `ch(R pi_* S)` for the universal r-th root `S` of
//! `(omega_log)^s(-sum m_i x_i)` as a tautological class on genus-0 moduli
//! spaces, converts it to Chern classes, and uses the result for orbifold
//! Gromov-Witten invariants of `[C^2/mu_r]`, genus-0 r-spin numbers and a
//! genus-0 Hurwitz cross-check. All arithmetic is exact.

pub mod cyclo;
pub mod error;
pub mod exact;
pub mod grr;
pub mod gw;
pub mod par;
pub mod rspin;
pub mod taut;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rational;
