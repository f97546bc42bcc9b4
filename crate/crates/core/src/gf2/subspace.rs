//! Linear subspaces in reduced row echelon form, and their cosets.

use std::fmt;

use serde::Serialize;

use super::{top_bit, PointSet, Vector};

/// A linear subspace of F₂ⁿ.
///
/// The basis is kept in reduced row echelon form: the pivot of a basis vector
/// is its highest set bit, pivots are strictly decreasing along the basis, and
/// no pivot bit occurs in any other basis vector. This form is unique per
/// subspace, so derived equality and ordering are canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// The zero subspace `{0}` of F₂ⁿ.
    pub fn zero(n: usize) -> Self {
        assert!(n <= 32);
        Subspace { n, basis: Vec::new() }
    }

    /// All of F₂ⁿ.
    pub fn full(n: usize) -> Self {
        Self::span(n, (0..n).rev().map(|i| 1 << i))
    }

    /// Span of the given vectors.
    pub fn span<I: IntoIterator<Item = Vector>>(n: usize, vectors: I) -> Self {
        let mut s = Self::zero(n);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Span of `{e_i : i in coords}` with zero-based coordinate indices.
    pub fn coordinate(n: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        Self::span(n, coords.into_iter().map(|i| 1 << i))
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn codim(&self) -> usize {
        self.n - self.basis.len()
    }

    /// Canonical basis, pivots strictly decreasing.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Bitmask of the pivot positions.
    pub fn pivot_mask(&self) -> Vector {
        self.basis.iter().fold(0, |m, &b| m | (1 << top_bit(b)))
    }

    /// Reduces `v` modulo the subspace. The result is the least element of
    /// the coset `v + self`, and is zero iff `v` lies in the subspace.
    #[inline]
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for &b in &self.basis {
            if v >> top_bit(b) & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    #[inline]
    pub fn contains(&self, v: Vector) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` to the subspace. Returns false if it was already contained.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert!(
            self.n == 32 || (v as u64) < (1u64 << self.n),
            "vector {v} outside F_2^{}",
            self.n
        );
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = top_bit(v);
        for b in self.basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= v;
            }
        }
        let pos = self.basis.partition_point(|&b| top_bit(b) > p);
        self.basis.insert(pos, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// Sum `self + other`.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for &b in &other.basis {
            s.insert(b);
        }
        s
    }

    /// Intersection with the hyperplane `{x : χ·x = 0}`.
    pub fn intersect_kernel(&self, character: Vector) -> Subspace {
        let odd = |b: Vector| (b & character).count_ones() & 1 == 1;
        let mut pivot: Option<Vector> = None;
        let mut kept = Vec::with_capacity(self.dim());
        for &b in &self.basis {
            if !odd(b) {
                kept.push(b);
            } else if let Some(p) = pivot {
                kept.push(b ^ p);
            } else {
                pivot = Some(b);
            }
        }
        Subspace::span(self.n, kept)
    }

    /// The vector with internal coordinates `w`. Bit `i` of `w` selects the
    /// basis vector with the `i`-th smallest pivot, so a coordinate subspace
    /// `span{e_1..e_d}` embeds by the identity.
    #[inline]
    pub fn embed(&self, w: Vector) -> Vector {
        let d = self.basis.len();
        let mut v = 0;
        let mut w = w;
        while w != 0 {
            let i = w.trailing_zeros() as usize;
            v ^= self.basis[d - 1 - i];
            w &= w - 1;
        }
        v
    }

    /// Internal coordinates of a member `v`; `None` when `v` is not in the
    /// subspace.
    pub fn coords(&self, v: Vector) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        let d = self.basis.len();
        let mut w = 0;
        for i in 0..d {
            w |= (v >> top_bit(self.basis[d - 1 - i]) & 1) << i;
        }
        Some(w)
    }

    /// All `2^dim` members, indexed by internal coordinates.
    pub fn elements(&self) -> Vec<Vector> {
        let d = self.basis.len();
        let mut out = vec![0; 1 << d];
        for w in 1..out.len() {
            let low = w.trailing_zeros() as usize;
            out[w] = out[w & (w - 1)] ^ self.basis[d - 1 - low];
        }
        out
    }

    /// Image of a subspace given in this subspace's internal coordinates.
    pub fn lift(&self, inner: &Subspace) -> Subspace {
        assert_eq!(inner.ambient_dim(), self.dim());
        Subspace::span(self.n, inner.basis.iter().map(|&b| self.embed(b)))
    }

    /// Canonical complement: the span of the standard coordinates that are
    /// not pivots of this subspace.
    pub fn complement(&self) -> Subspace {
        let pivots = self.pivot_mask();
        Subspace::coordinate(self.n, (0..self.n).filter(|&i| pivots >> i & 1 == 0))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, dim={}, basis={:?})", self.n, self.dim(), self.basis)
    }
}

/// The minimal subspace containing every member of `points`.
pub fn closure(points: &PointSet) -> Subspace {
    let mut s = Subspace::zero(points.dim());
    for v in points {
        if s.dim() == points.dim() {
            break;
        }
        s.insert(v);
    }
    s
}

/// The projective points of a flat: the nonzero vectors of the subspace.
pub fn flat_points(space: &Subspace) -> PointSet {
    let mut s = PointSet::from_points(space.ambient_dim(), space.elements());
    s.remove(0);
    s
}

/// A coset `shift + space` with the shift canonicalised to the least member.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AffineFlat {
    space: Subspace,
    shift: Vector,
}

impl AffineFlat {
    pub fn new(space: Subspace, v: Vector) -> Self {
        let shift = space.reduce(v);
        AffineFlat { space, shift }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn shift(&self) -> Vector {
        self.shift
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// True when the coset is the subspace itself.
    pub fn is_linear(&self) -> bool {
        self.shift == 0
    }

    pub fn contains(&self, v: Vector) -> bool {
        self.space.reduce(v) == self.shift
    }

    /// Members indexed by the internal coordinates of the underlying space.
    pub fn elements(&self) -> Vec<Vector> {
        let mut e = self.space.elements();
        e.iter_mut().for_each(|v| *v ^= self.shift);
        e
    }

    pub fn to_point_set(&self) -> PointSet {
        PointSet::from_points(self.space.ambient_dim(), self.elements())
    }

    /// Linear closure of the coset: `space` when linear, otherwise
    /// `space + <shift>`, one dimension higher.
    pub fn linear_closure(&self) -> Subspace {
        let mut s = self.space.clone();
        s.insert(self.shift);
        s
    }
}

impl fmt::Debug for AffineFlat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineFlat(shift={}, {:?})", self.shift, self.space)
    }
}

/// Canonical coset representatives of `space`, in increasing order. The
/// first one is always 0.
pub fn coset_shifts(space: &Subspace) -> Vec<Vector> {
    space.complement().elements_sorted()
}

impl Subspace {
    /// Members in increasing integer order.
    pub fn elements_sorted(&self) -> Vec<Vector> {
        let mut e = self.elements();
        e.sort_unstable();
        e
    }
}

/// All `2^(n - dim)` cosets of `space`; the subspace itself comes first.
pub fn cosets(space: &Subspace) -> Vec<AffineFlat> {
    coset_shifts(space)
        .into_iter()
        .map(|a| AffineFlat {
            space: space.clone(),
            shift: a,
        })
        .collect()
}

/// A complement W of `space`: `space ∩ W = {0}` and `space + W = F₂ⁿ`.
pub fn complement_flat(space: &Subspace) -> Subspace {
    space.complement()
}
