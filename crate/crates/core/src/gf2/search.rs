//! Backtracking searches for subspaces and affine flats inside a point set.
//!
//! Every subspace `K ⊇ base` is generated exactly once: the chosen vectors
//! are canonical coset representatives modulo `base` and the vectors chosen
//! before them, and their pivots (highest set bits) strictly increase. The
//! candidate list at a node holds every representative `w` with
//! `w + current ⊆ set` whose pivot exceeds the last pivot chosen; a further
//! extension by `j` dimensions needs `2^j - 1` of them, which gives the
//! pruning bound.

use crate::error::{Error, Result};

use super::{top_bit, AffineFlat, PointSet, Subspace, Vector};

/// Caps the number of nodes a single search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64) -> Self {
        SearchBudget { max_nodes }
    }

    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: u64::MAX }
    }
}

/// Guaranteed ambient cap for the exponential "largest in" searches.
pub const LARGEST_IN_CAP: usize = 14;

#[inline]
fn log2_floor_plus_one(m: usize) -> usize {
    // floor(log2(m + 1))
    (usize::BITS - 1 - (m + 1).leading_zeros()) as usize
}

enum Mode<'v> {
    /// Stop at the first subspace of exactly this dimension.
    Find(usize),
    /// Maximum dimension (at least `floor`), least canonical basis on ties.
    Maximum { floor: usize },
    /// Visit every subspace of exactly this dimension.
    Visit(usize, &'v mut dyn FnMut(&Subspace) -> bool),
}

struct Search<'v> {
    base: Subspace,
    forbidden_pivots: Vector,
    budget: SearchBudget,
    nodes: u64,
    mode: Mode<'v>,
    best: Option<Subspace>,
    stop: bool,
}

fn current(base: &Subspace, chosen: &[Vector]) -> Subspace {
    let mut s = base.clone();
    for &v in chosen {
        s.insert(v);
    }
    s
}

impl Search<'_> {
    fn dfs(&mut self, chosen: &mut Vec<Vector>, cands: &[Vector]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded {
                search: "subspace search",
                budget: self.budget.max_nodes,
            });
        }
        let dim = self.base.dim() + chosen.len();
        match &mut self.mode {
            Mode::Find(target) => {
                if dim == *target {
                    self.best = Some(current(&self.base, chosen));
                    self.stop = true;
                    return Ok(());
                }
            }
            Mode::Visit(target, f) => {
                if dim == *target {
                    if !f(&current(&self.base, chosen)) {
                        self.stop = true;
                    }
                    return Ok(());
                }
            }
            Mode::Maximum { floor } => {
                if dim >= *floor {
                    let s = current(&self.base, chosen);
                    let better = match &self.best {
                        None => true,
                        Some(b) => dim > b.dim() || (dim == b.dim() && s < *b),
                    };
                    if better {
                        *floor = dim;
                        self.best = Some(s);
                    }
                }
            }
        }
        let needed = match &self.mode {
            Mode::Find(t) | Mode::Visit(t, _) => *t,
            Mode::Maximum { floor } => *floor,
        };
        if dim + log2_floor_plus_one(cands.len()) < needed {
            return Ok(());
        }
        for (i, &v) in cands.iter().enumerate() {
            let p = top_bit(v);
            if self.forbidden_pivots >> p & 1 == 1 {
                continue;
            }
            let suffix_start = cands.partition_point(|&w| w < 1 << (p + 1));
            let suffix = &cands[suffix_start.max(i + 1)..];
            // Each surviving child candidate pairs w with w ^ v, both in the suffix.
            let needed = match &self.mode {
                Mode::Find(t) | Mode::Visit(t, _) => *t,
                Mode::Maximum { floor } => *floor,
            };
            if dim + 1 + log2_floor_plus_one(suffix.len() / 2) < needed {
                // Later candidates have even shorter suffixes.
                break;
            }
            let child: Vec<Vector> = suffix
                .iter()
                .copied()
                .filter(|&w| w >> p & 1 == 0 && suffix.binary_search(&(w ^ v)).is_ok())
                .collect();
            chosen.push(v);
            self.dfs(chosen, &child)?;
            chosen.pop();
            if self.stop {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Initial candidates: nonzero representatives `w` (reduced modulo `base`)
/// with the whole coset `w + base` inside `set`.
fn initial_candidates(set: &PointSet, base: &Subspace) -> Vec<Vector> {
    let pivots = base.pivot_mask();
    let members = base.elements();
    (1..set.universe() as Vector)
        .filter(|&w| w & pivots == 0)
        .filter(|&w| members.iter().all(|&h| set.contains(w ^ h)))
        .collect()
}

fn run(
    set: &PointSet,
    base: Subspace,
    forbidden_pivots: Vector,
    mode: Mode<'_>,
    budget: SearchBudget,
) -> Result<(Option<Subspace>, u64)> {
    assert_eq!(set.dim(), base.ambient_dim());
    if !base.elements().iter().all(|&h| set.contains(h)) {
        return Ok((None, 0));
    }
    let cands = initial_candidates(set, &base);
    let mut search = Search {
        base,
        forbidden_pivots,
        budget,
        nodes: 0,
        mode,
        best: None,
        stop: false,
    };
    search.dfs(&mut Vec::new(), &cands)?;
    Ok((search.best, search.nodes))
}

/// Some subspace of dimension `dim` containing `base` with every element
/// (zero included) in `set`. Deterministic: the first one in the canonical
/// enumeration order.
pub fn find_subspace(
    set: &PointSet,
    base: &Subspace,
    dim: usize,
    budget: SearchBudget,
) -> Result<Option<Subspace>> {
    if dim < base.dim() || dim > set.dim() {
        return Ok(None);
    }
    Ok(run(set, base.clone(), 0, Mode::Find(dim), budget)?.0)
}

/// Calls `f` on every subspace of dimension `dim` all of whose elements lie
/// in `set`, until `f` returns false.
pub fn for_each_subspace(
    set: &PointSet,
    dim: usize,
    budget: SearchBudget,
    mut f: impl FnMut(&Subspace) -> bool,
) -> Result<()> {
    if dim > set.dim() {
        return Ok(());
    }
    run(set, Subspace::zero(set.dim()), 0, Mode::Visit(dim, &mut f), budget)?;
    Ok(())
}

/// A maximum-dimension subspace with all elements (including 0) in `s`, or
/// `None` when `0 ∉ s`. Ties are broken by the least canonical basis.
/// Exact up to n = [`LARGEST_IN_CAP`] within the default budget.
pub fn largest_subspace_in(s: &PointSet, budget: SearchBudget) -> Result<Option<Subspace>> {
    if !s.contains(0) {
        return Ok(None);
    }
    let (best, _) = run(
        s,
        Subspace::zero(s.dim()),
        0,
        Mode::Maximum { floor: 0 },
        budget,
    )?;
    Ok(best)
}

/// A maximum-dimension affine flat contained in `s`, or `None` when `s` is
/// empty. Ties are broken by the least canonical `(space, shift)`.
pub fn largest_affine_in(s: &PointSet, budget: SearchBudget) -> Result<Option<AffineFlat>> {
    let mut best: Option<AffineFlat> = None;
    let mut nodes_left = budget.max_nodes;
    for a in s {
        let floor = best.as_ref().map_or(0, |b| b.dim());
        let translated = s.translate(a);
        // Pivots avoiding the bits of `a` make `a` the least coset member.
        let (found, nodes) = run(
            &translated,
            Subspace::zero(s.dim()),
            a,
            Mode::Maximum { floor },
            SearchBudget::new(nodes_left),
        )?;
        nodes_left -= nodes.min(nodes_left);
        if let Some(space) = found {
            let cand = AffineFlat::new(space, a);
            debug_assert_eq!(cand.shift(), a);
            let better = match &best {
                None => true,
                Some(b) => {
                    cand.dim() > b.dim()
                        || (cand.dim() == b.dim()
                            && (cand.space(), cand.shift()) < (b.space(), b.shift()))
                }
            };
            if better {
                best = Some(cand);
            }
        }
    }
    Ok(best)
}
