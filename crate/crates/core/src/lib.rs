//! k-component domination in maximal outerplanar graphs.
//!
//! A maximal outerplanar graph (MOP) is a triangulated convex polygon. This
//! crate offers exact solvers for minimum k-component dominating sets, the
//! named extremal families, recognition of the exceptional family, and a
//! constructive algorithm that always meets the bound
//! `floor(kn/(2k+1))`, or `ceil(kn/(2k+1))` on exceptional graphs.

pub mod construct;
pub mod exact;
pub mod families;
pub mod hk;
pub mod io;
pub mod mop;
pub mod report;

pub use exact::{gamma_k_exact, is_kcds, min_kcds, Constraints, DomSet, GammaTable, Solver};
pub use mop::{CanonicalForm, MopError, MopGraph, Pair};

/// `floor(kn/(2k+1))`.
pub fn floor_bound(k: usize, n: usize) -> usize {
    k * n / (2 * k + 1)
}

/// `ceil(kn/(2k+1))`.
pub fn ceil_bound(k: usize, n: usize) -> usize {
    (k * n).div_ceil(2 * k + 1)
}
