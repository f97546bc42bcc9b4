//! Packed bitsets over the 2ⁿ vectors of F₂ⁿ.

use std::fmt;

use super::Vector;

/// Largest ambient dimension for which a [`PointSet`] may be allocated.
pub const MAX_SET_DIM: usize = 28;

/// A subset of F₂ⁿ stored as a bitset of length 2ⁿ.
///
/// Bit `v` is set iff the vector with integer value `v` is a member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    n: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(n: usize) -> usize {
    ((1usize << n) + 63) / 64
}

impl PointSet {
    /// The empty subset of F₂ⁿ.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SET_DIM, "ambient dimension {n} exceeds {MAX_SET_DIM}");
        PointSet {
            n,
            words: vec![0; word_count(n)],
        }
    }

    /// All of F₂ⁿ, including the zero vector.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.words.iter_mut().for_each(|w| *w = !0);
        s.trim();
        s
    }

    /// The nonzero vectors of F₂ⁿ, i.e. the points of PG(n-1, 2).
    pub fn nonzero(n: usize) -> Self {
        let mut s = Self::full(n);
        s.remove(0);
        s
    }

    pub fn from_points<I: IntoIterator<Item = Vector>>(n: usize, points: I) -> Self {
        let mut s = Self::empty(n);
        for v in points {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let size = 1usize << self.n;
        if size < 64 {
            self.words[0] &= (1u64 << size) - 1;
        }
    }

    /// Ambient dimension n.
    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of vectors in the ambient space, 2ⁿ.
    #[inline]
    pub fn universe(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn contains(&self, v: Vector) -> bool {
        let v = v as usize;
        debug_assert!(v < self.universe());
        (self.words[v >> 6] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vector) -> bool {
        let v = v as usize;
        assert!(v < self.universe(), "vector {v} outside F_2^{}", self.n);
        let mask = 1u64 << (v & 63);
        let was = self.words[v >> 6] & mask != 0;
        self.words[v >> 6] |= mask;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: Vector) -> bool {
        let v = v as usize;
        assert!(v < self.universe(), "vector {v} outside F_2^{}", self.n);
        let mask = 1u64 << (v & 63);
        let was = self.words[v >> 6] & mask != 0;
        self.words[v >> 6] &= !mask;
        was
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<Vector> {
        self.iter().collect()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<Vector> {
        self.iter().next()
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(self.n, other.n, "point sets live in different ambient spaces");
    }

    pub fn union_with(&mut self, other: &Self) {
        self.assert_same_dim(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.assert_same_dim(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.assert_same_dim(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Complement inside F₂ⁿ (the zero vector included).
    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        s.words.iter_mut().for_each(|w| *w = !*w);
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.assert_same_dim(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.assert_same_dim(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// The translate `{v ⊕ c : v ∈ self}`.
    pub fn translate(&self, c: Vector) -> Self {
        let c = c as usize;
        assert!(c < self.universe());
        let mut out = Self::empty(self.n);
        let high = c >> 6;
        for (i, &w) in self.words.iter().enumerate() {
            out.words[i ^ high] = permute_word(w, c & 63);
        }
        out
    }
}

/// Applies `bit i -> bit (i ^ c)` inside a 64-bit word.
#[inline]
fn permute_word(mut w: u64, c: usize) -> u64 {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (j, mask) in MASKS.iter().enumerate() {
        if c >> j & 1 == 1 {
            let s = 1 << j;
            w = ((w & mask) << s) | ((w >> s) & mask);
        }
    }
    w
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some((self.index * 64 + bit) as Vector);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = Vector;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(n={}, ", self.n)?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}
