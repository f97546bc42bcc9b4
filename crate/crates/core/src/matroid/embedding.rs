//! Injective linear embeddings of a pattern matroid into a host matroid.
//!
//! The images of the pattern's basis vectors are chosen one at a time. Once
//! the images of `e_1..e_i` are fixed, every pattern point in their span is
//! determined, so each level only needs to constrain the points whose
//! highest basis index is `i`. The constraint "`φ(p) ∈ E`" for
//! `p = e_i ⊕ r` reads `φ(e_i) ∈ E ⊕ φ(r)`, which is a translated bitset, so
//! the candidate set at each level is a handful of word-level intersections.

use crate::error::{Error, Result};
use crate::gf2::{PointSet, SearchBudget, Subspace, Vector};

use super::Matroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    /// Ground points map into `E`, other nonzero points map outside `E`.
    Induced,
    /// Ground points map into `E`; nothing else is constrained.
    Restriction,
}

/// A linear injection `φ`, described by the images of the standard basis
/// vectors of the pattern's ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub images: Vec<Vector>,
}

impl Embedding {
    pub fn apply(&self, v: Vector) -> Vector {
        let mut out = 0;
        let mut v = v;
        while v != 0 {
            let i = v.trailing_zeros() as usize;
            out ^= self.images[i];
            v &= v - 1;
        }
        out
    }

    /// The image flat `φ(F₂^p)` inside the host.
    pub fn image(&self, host_dim: usize) -> Subspace {
        Subspace::span(host_dim, self.images.iter().copied())
    }
}

/// Rewrites the pattern in a basis whose leading vectors are ground points,
/// so that ground constraints are checked as early as possible. Returns the
/// re-coordinatised pattern ground set and the change-of-basis map (images
/// of the new basis vectors in the old coordinates).
fn ground_first_coordinates(pattern: &Matroid) -> (PointSet, Vec<Vector>) {
    let p = pattern.dim();
    let mut basis: Vec<Vector> = Vec::with_capacity(p);
    let mut span = Subspace::zero(p);
    // Ground points that extend the span come first.
    for e in pattern.ground() {
        if span.insert(e) {
            basis.push(e);
        }
    }
    for i in 0..p {
        if span.insert(1 << i) {
            basis.push(1 << i);
        }
    }
    let new_to_old = |w: Vector| -> Vector {
        let mut v = 0;
        for (i, &b) in basis.iter().enumerate() {
            if w >> i & 1 == 1 {
                v ^= b;
            }
        }
        v
    };
    let ground = PointSet::from_points(
        p,
        (1..(1 as Vector) << p).filter(|&w| pattern.ground().contains(new_to_old(w))),
    );
    (ground, basis)
}

struct EmbeddingSearch<'a> {
    host_dim: usize,
    host_ground: &'a PointSet,
    host_outside: PointSet,
    pattern_ground: PointSet,
    pattern_dim: usize,
    kind: EmbeddingKind,
    budget: SearchBudget,
    nodes: u64,
    /// `phi[w]` for every pattern vector `w` in the span fixed so far.
    phi: Vec<Vector>,
}

impl EmbeddingSearch<'_> {
    fn dfs(&mut self, level: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded {
                search: "embedding search",
                budget: self.budget.max_nodes,
            });
        }
        if level == self.pattern_dim {
            return Ok(true);
        }
        let bit: Vector = 1 << level;
        let mut allowed = PointSet::nonzero(self.host_dim);
        for r in 0..bit {
            let fixed = self.phi[r as usize];
            // Injectivity: φ(e_i) must avoid the span fixed so far.
            allowed.remove(fixed);
            let p = bit | r;
            if self.pattern_ground.contains(p) {
                allowed.intersect_with(&self.host_ground.translate(fixed));
            } else if self.kind == EmbeddingKind::Induced {
                allowed.intersect_with(&self.host_outside.translate(fixed));
            }
            if allowed.is_empty() {
                return Ok(false);
            }
        }
        for v in allowed.iter() {
            for r in 0..bit as usize {
                self.phi[bit as usize | r] = v ^ self.phi[r];
            }
            if self.dfs(level + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Searches for an embedding of `pattern` into `host`; deterministic
/// (lexicographic in the images of the re-coordinatised basis).
pub fn find_embedding(
    host: &Matroid,
    pattern: &Matroid,
    kind: EmbeddingKind,
    budget: SearchBudget,
) -> Result<Option<Embedding>> {
    let n = host.dim();
    let p = pattern.dim();
    if p > n {
        return Ok(None);
    }
    let (pattern_ground, basis) = ground_first_coordinates(pattern);
    let mut host_outside = host.ground().complement();
    host_outside.remove(0);
    let mut search = EmbeddingSearch {
        host_dim: n,
        host_ground: host.ground(),
        host_outside,
        pattern_ground,
        pattern_dim: p,
        kind,
        budget,
        nodes: 0,
        phi: vec![0; 1 << p],
    };
    if !search.dfs(0)? {
        return Ok(None);
    }
    // φ is known on the new basis; convert back to the standard basis.
    let mut images = vec![0; p];
    for (i, image) in images.iter_mut().enumerate() {
        // Express e_i in the new basis by solving over F₂.
        let w = solve_in_basis(&basis, 1 << i);
        *image = search.phi[w as usize];
    }
    let emb = Embedding { images };
    debug_assert!(verify_embedding(host, pattern, &emb, kind));
    Ok(Some(emb))
}

/// Coordinates of `target` with respect to the independent list `basis`.
fn solve_in_basis(basis: &[Vector], target: Vector) -> Vector {
    // Gaussian elimination tracking combinations.
    let mut rows: Vec<(Vector, Vector)> = basis
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, 1 << i))
        .collect();
    let mut t = (target, 0 as Vector);
    let mut used = 0usize;
    for bit in (0..32).rev() {
        let Some(pos) = (used..rows.len()).find(|&j| rows[j].0 >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(used, pos);
        let pivot = rows[used];
        for (j, row) in rows.iter_mut().enumerate() {
            if j != used && row.0 >> bit & 1 == 1 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
        if t.0 >> bit & 1 == 1 {
            t.0 ^= pivot.0;
            t.1 ^= pivot.1;
        }
        used += 1;
    }
    assert_eq!(t.0, 0, "target outside the span of the basis");
    t.1
}

/// Direct check of an embedding against the definition.
pub fn verify_embedding(
    host: &Matroid,
    pattern: &Matroid,
    emb: &Embedding,
    kind: EmbeddingKind,
) -> bool {
    let p = pattern.dim();
    if emb.images.len() != p {
        return false;
    }
    for w in 1..(1 as Vector) << p {
        let v = emb.apply(w);
        if v == 0 {
            return false;
        }
        let in_host = host.ground().contains(v);
        if pattern.ground().contains(w) {
            if !in_host {
                return false;
            }
        } else if kind == EmbeddingKind::Induced && in_host {
            return false;
        }
    }
    true
}
