//! Exact computation on simple binary matroids viewed as point sets of a
//! binary projective geometry PG(n-1, 2).
//!
//! Vectors of F₂ⁿ are machine integers, point sets are packed bitsets over
//! all 2ⁿ vectors, and every verdict is computed with exact integer or
//! rational arithmetic.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: vectors, point sets, subspaces, cosets and subspace searches.
//! - [`matroid`]: the matroid `(E, G)`, freeness predicates, ω and χ, and
//!   linear embedding searches.
//! - [`fourier`]: Walsh–Hadamard spectra, ε-uniformity, triple-sum counts.
//! - [`regularity`]: ε-regular subspaces and the dense-sumset witness.
//! - [`constructions`]: tripods, C₅ and affine geometries.
//! - [`ramsey`]: monochromatic flats, tiny geometric Ramsey numbers and the
//!   Bose–Burton bound.
//! - [`pipeline`]: the critical-number descent producing a verified flat
//!   disjoint from the ground set.
//! - [`format`] and [`report`]: the text file format and run reports.

pub mod constructions;
pub mod error;
pub mod format;
pub mod fourier;
pub mod gf2;
pub mod matroid;
pub mod pipeline;
pub mod ramsey;
pub mod rational;
pub mod regularity;
pub mod report;

pub use error::{Error, Result};
pub use gf2::{AffineFlat, PointSet, SearchBudget, Subspace, Vector};
pub use matroid::Matroid;
pub use rational::Rational;
