//! Simple binary matroids `M = (E, G)` with `G = PG(n-1, 2)`.

mod embedding;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{
    find_subspace, flat_points, largest_subspace_in, PointSet, SearchBudget, Subspace, Vector,
};

pub use embedding::{find_embedding, verify_embedding, Embedding, EmbeddingKind};

/// A ground set `E` of nonzero vectors of F₂ⁿ together with its ambient
/// dimension `n`. The ground set need not span.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    ground: PointSet,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Matroid(n={}, E={:?})", self.n, self.ground.to_vec())
    }
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Matroid", 2)?;
        st.serialize_field("dim", &self.n)?;
        st.serialize_field("points", &self.ground.to_vec())?;
        st.end()
    }
}

impl Matroid {
    pub fn new(n: usize, ground: PointSet) -> Result<Self> {
        if ground.dim() != n {
            return Err(Error::precondition(format!(
                "ground set lives in dimension {}, expected {n}",
                ground.dim()
            )));
        }
        if ground.contains(0) {
            return Err(Error::precondition("the zero vector is not a point"));
        }
        Ok(Matroid { n, ground })
    }

    pub fn from_points<I: IntoIterator<Item = Vector>>(n: usize, points: I) -> Result<Self> {
        Self::new(n, PointSet::from_points(n, points))
    }

    pub fn empty(n: usize) -> Self {
        Matroid {
            n,
            ground: PointSet::empty(n),
        }
    }

    /// The whole geometry PG(n-1, 2).
    pub fn full(n: usize) -> Self {
        Matroid {
            n,
            ground: PointSet::nonzero(n),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn ground(&self) -> &PointSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: Vector) -> bool {
        self.ground.contains(v)
    }

    /// `M^c = (G \ E, G)`.
    pub fn complement(&self) -> Matroid {
        let mut g = self.ground.complement();
        g.remove(0);
        Matroid { n: self.n, ground: g }
    }

    /// The induced restriction `(E ∩ F, F)`, written in the internal
    /// coordinates of `flat`.
    pub fn restrict(&self, flat: &Subspace) -> Matroid {
        assert_eq!(flat.ambient_dim(), self.n);
        let d = flat.dim();
        let elems = flat.elements();
        let ground = PointSet::from_points(
            d,
            (1..elems.len()).filter(|&w| self.contains(elems[w])).map(|w| w as Vector),
        );
        Matroid { n: d, ground }
    }

    /// The same ground set inside a larger ambient space.
    pub fn pad(&self, n: usize) -> Matroid {
        assert!(n >= self.n);
        Matroid {
            n,
            ground: PointSet::from_points(n, self.ground.iter()),
        }
    }
}

/// True iff no two distinct points of `E` have their sum in `E`.
pub fn is_triangle_free(m: &Matroid) -> bool {
    let pts = m.ground.to_vec();
    pts.iter()
        .enumerate()
        .all(|(i, &a)| pts[i + 1..].iter().all(|&b| !m.contains(a ^ b)))
}

/// A dim-`t` subspace whose projective points meet `E` in exactly one
/// point, if one exists. The witness with the least anchor point is
/// returned.
///
/// Each anchor `e ∈ E` is searched separately: a witness flat meets `E` in
/// exactly one point, so anchoring on that point is complete.
pub fn find_i1t_witness(m: &Matroid, t: usize, budget: SearchBudget) -> Result<Option<Subspace>> {
    if t == 0 || t > m.n {
        return Err(Error::precondition(format!(
            "I_(1,t) needs 1 <= t <= n, got t={t}, n={}",
            m.n
        )));
    }
    // Vectors allowed in the witness apart from the anchor: 0 and non-points.
    let outside = m.ground.complement();
    let anchors = m.ground.to_vec();
    anchors
        .par_iter()
        .map(|&e| {
            let mut allowed = outside.clone();
            allowed.insert(e);
            find_subspace(&allowed, &Subspace::span(m.n, [e]), t, budget)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// True iff no dim-`t` flat meets `E` in exactly one point.
pub fn is_i1t_free(m: &Matroid, t: usize, budget: SearchBudget) -> Result<bool> {
    Ok(find_i1t_witness(m, t, budget)?.is_none())
}

/// Re-checks an I_{1,t} witness directly.
pub fn verify_i1t_witness(m: &Matroid, t: usize, w: &Subspace) -> bool {
    w.ambient_dim() == m.n
        && w.dim() == t
        && flat_points(w).intersection(&m.ground).len() == 1
}

/// The largest flat fully contained in `E`.
pub fn largest_flat_in(m: &Matroid, budget: SearchBudget) -> Result<Subspace> {
    let mut s = m.ground.clone();
    s.insert(0);
    Ok(largest_subspace_in(&s, budget)?.expect("0 is always included"))
}

/// ω(M): dimension of the largest flat contained in `E`.
pub fn omega(m: &Matroid, budget: SearchBudget) -> Result<usize> {
    Ok(largest_flat_in(m, budget)?.dim())
}

/// χ(M) = n − ω(M^c).
pub fn critical_number(m: &Matroid, budget: SearchBudget) -> Result<usize> {
    Ok(m.n - omega(&m.complement(), budget)?)
}

/// True iff some injective linear map sends `pattern.E` into `E` and the
/// other nonzero points of the pattern outside `E`.
pub fn induced_iso_exists(m: &Matroid, pattern: &Matroid, budget: SearchBudget) -> Result<bool> {
    check_pattern_dim(m, pattern)?;
    Ok(find_embedding(m, pattern, EmbeddingKind::Induced, budget)?.is_some())
}

/// True iff some injective linear map sends `pattern.E` into `E`.
pub fn restriction_embedding_exists(
    m: &Matroid,
    pattern: &Matroid,
    budget: SearchBudget,
) -> Result<bool> {
    check_pattern_dim(m, pattern)?;
    Ok(find_embedding(m, pattern, EmbeddingKind::Restriction, budget)?.is_some())
}

fn check_pattern_dim(m: &Matroid, pattern: &Matroid) -> Result<()> {
    if pattern.n > m.n {
        return Err(Error::precondition(format!(
            "pattern dimension {} exceeds host dimension {}",
            pattern.n, m.n
        )));
    }
    Ok(())
}
