//! The geometric substrate: vectors of F₂ⁿ, point sets, subspaces, cosets
//! and subspace-in-set searches.
//!
//! A "dim-t flat" always means a t-dimensional linear subspace; its
//! projective points are its nonzero vectors.

mod pointset;
mod search;
mod subspace;

pub use pointset::{PointSet, MAX_SET_DIM};
pub use search::{
    find_subspace, for_each_subspace, largest_affine_in, largest_subspace_in, SearchBudget,
    LARGEST_IN_CAP,
};
pub use subspace::{
    closure, complement_flat, coset_shifts, cosets, flat_points, AffineFlat, Subspace,
};

/// A vector of F₂ⁿ as an integer; bit `i` is coordinate `e_{i+1}`.
pub type Vector = u32;

/// Index of the highest set bit. `v` must be nonzero.
#[inline]
pub fn top_bit(v: Vector) -> u32 {
    debug_assert!(v != 0);
    31 - v.leading_zeros()
}

/// Inner product over F₂.
#[inline]
pub fn dot(a: Vector, b: Vector) -> bool {
    (a & b).count_ones() & 1 == 1
}
