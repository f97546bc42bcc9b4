//! Monochromatic flats, tiny geometric Ramsey numbers, and the Bose–Burton
//! bound.
//!
//! `GR(c, r)` is the least `n` such that every `c`-colouring of the points
//! of PG(n-1, 2) has a monochromatic `r`-dimensional flat. Only tiny cases
//! are within reach; [`gr_search`] settles them exhaustively and keeps a
//! flat-free colouring as a certificate for every smaller `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{for_each_subspace, PointSet, SearchBudget, Subspace, Vector};
use crate::matroid::{largest_flat_in, Matroid};

/// A colouring of the nonzero vectors of F₂ⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    num_colors: u32,
    /// `colors[v - 1]` is the colour of point `v`.
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(n: usize, num_colors: u32, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != (1usize << n) - 1 {
            return Err(Error::precondition(format!(
                "a colouring of PG({}, 2) needs {} entries, got {}",
                n as isize - 1,
                (1usize << n) - 1,
                colors.len()
            )));
        }
        if let Some(bad) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(Error::precondition(format!(
                "colour {bad} out of range for {num_colors} colours"
            )));
        }
        Ok(Coloring {
            n,
            num_colors,
            colors,
        })
    }

    pub fn uniform(n: usize, num_colors: u32) -> Self {
        Coloring {
            n,
            num_colors: num_colors.max(1),
            colors: vec![0; (1usize << n) - 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn color_of(&self, v: Vector) -> u32 {
        self.colors[v as usize - 1]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn class(&self, color: u32) -> PointSet {
        PointSet::from_points(
            self.n,
            (1..=self.colors.len() as Vector).filter(|&v| self.color_of(v) == color),
        )
    }

    /// Direct check that every point of `flat` has the same colour.
    pub fn is_monochromatic(&self, flat: &Subspace) -> Option<u32> {
        let elems = flat.elements();
        let first = self.color_of(*elems.get(1)?);
        elems[1..]
            .iter()
            .all(|&v| self.color_of(v) == first)
            .then_some(first)
    }
}

/// A monochromatic `r`-dimensional flat, searched colour by colour.
pub fn find_monochromatic_flat(
    col: &Coloring,
    r: usize,
    budget: SearchBudget,
) -> Result<Option<(u32, Subspace)>> {
    if r == 0 || r > col.n {
        return Err(Error::precondition(format!(
            "flat dimension must satisfy 1 <= r <= n, got r={r}, n={}",
            col.n
        )));
    }
    for color in 0..col.num_colors {
        let mut class = col.class(color);
        class.insert(0);
        let found = crate::gf2::find_subspace(&class, &Subspace::zero(col.n), r, budget)?;
        if let Some(flat) = found {
            debug_assert_eq!(col.is_monochromatic(&flat), Some(color));
            return Ok(Some((color, flat)));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pruning {
    /// Every colouring is enumerated.
    None,
    /// Colours are introduced in order, so colourings that differ by a
    /// permutation of colour names are enumerated once.
    ColorSymmetry,
}

/// Outcome of [`gr_search`].
#[derive(Clone, Debug)]
pub struct GrResult {
    pub num_colors: u32,
    pub r: usize,
    /// Least `n ≤ n_max` forcing a monochromatic `r`-flat.
    pub n: Option<usize>,
    /// Flat-free colourings of PG(m-1, 2) for `m = 1, 2, ...` below the
    /// answer (or up to `n_max` when not found).
    pub certificates: Vec<Coloring>,
    pub nodes: u64,
}

struct ColoringSearch<'a> {
    num_colors: u32,
    pruning: Pruning,
    /// Point lists of the r-flats, grouped by their largest point.
    flats_ending_at: &'a [Vec<Vec<Vector>>],
    colors: Vec<u32>,
    nodes: u64,
    budget: SearchBudget,
}

impl ColoringSearch<'_> {
    fn color(&self, v: Vector) -> u32 {
        self.colors[v as usize - 1]
    }

    /// Assigns colours to points `p..` without completing a monochromatic flat.
    fn dfs(&mut self, p: usize, max_used: Option<u32>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded {
                search: "colouring search",
                budget: self.budget.max_nodes,
            });
        }
        if p > self.colors.len() {
            return Ok(true);
        }
        let limit = match self.pruning {
            Pruning::None => self.num_colors,
            Pruning::ColorSymmetry => self.num_colors.min(max_used.map_or(1, |m| m + 2)),
        };
        for c in 0..limit {
            self.colors[p - 1] = c;
            let completes_mono = self.flats_ending_at[p].iter().any(|flat| {
                flat.iter().all(|&v| self.color(v) == c)
            });
            if completes_mono {
                continue;
            }
            let used = Some(max_used.map_or(c, |m| m.max(c)));
            if self.dfs(p + 1, used)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Lists the point sets of all r-flats of PG(n-1, 2), grouped by maximum
/// point.
fn flats_by_max_point(n: usize, r: usize, budget: SearchBudget) -> Result<Vec<Vec<Vec<Vector>>>> {
    let mut out = vec![Vec::new(); 1 << n];
    for_each_subspace(&PointSet::full(n), r, budget, |s| {
        let mut pts = s.elements();
        pts.sort_unstable();
        pts.remove(0);
        let max = *pts.last().expect("r >= 1");
        out[max as usize].push(pts);
        true
    })?;
    Ok(out)
}

/// A `c`-colouring of PG(n-1, 2) with no monochromatic r-flat, if any.
pub fn find_flat_free_coloring(
    n: usize,
    num_colors: u32,
    r: usize,
    pruning: Pruning,
    budget: SearchBudget,
) -> Result<(Option<Coloring>, u64)> {
    if r > n {
        // No r-flats at all.
        return Ok((Some(Coloring::uniform(n, num_colors)), 0));
    }
    let flats = flats_by_max_point(n, r, budget)?;
    let mut search = ColoringSearch {
        num_colors,
        pruning,
        flats_ending_at: &flats,
        colors: vec![0; (1 << n) - 1],
        nodes: 0,
        budget,
    };
    let found = search.dfs(1, None)?;
    let nodes = search.nodes;
    let coloring = found
        .then(|| Coloring::new(n, num_colors, search.colors))
        .transpose()?;
    Ok((coloring, nodes))
}

/// Least `n ≤ n_max` such that every `c`-colouring of PG(n-1, 2) contains a
/// monochromatic r-flat. Certificates for smaller `n` are re-verified.
pub fn gr_search(
    num_colors: u32,
    r: usize,
    n_max: usize,
    pruning: Pruning,
    budget: SearchBudget,
) -> Result<GrResult> {
    if num_colors == 0 || r == 0 {
        return Err(Error::precondition("need at least one colour and r >= 1"));
    }
    crate::error::check_dim("gr_search", n_max, 8)?;
    let mut certificates = Vec::new();
    let mut nodes = 0;
    for n in 1..=n_max {
        let (coloring, used) = find_flat_free_coloring(n, num_colors, r, pruning, budget)?;
        nodes += used;
        match coloring {
            Some(col) => {
                if r <= n && find_monochromatic_flat(&col, r, budget)?.is_some() {
                    return Err(Error::internal(format!(
                        "certificate colouring for n={n} contains a monochromatic flat"
                    )));
                }
                certificates.push(col);
            }
            None => {
                return Ok(GrResult {
                    num_colors,
                    r,
                    n: Some(n),
                    certificates,
                    nodes,
                })
            }
        }
    }
    Ok(GrResult {
        num_colors,
        r,
        n: None,
        certificates,
        nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoseBurtonVerdict {
    pub dim: usize,
    pub t: usize,
    pub size: usize,
    /// A (t+1)-dimensional flat inside `E`, if one exists.
    pub flat: Option<Subspace>,
    /// `2ⁿ(1 − 2^{−t}) = 2ⁿ − 2^{n−t}`, reported when no such flat exists.
    pub bound: Option<u64>,
    pub within_bound: Option<bool>,
}

/// `2ⁿ(1 − 2^{−t})`.
pub fn bose_burton_bound(n: usize, t: usize) -> u64 {
    assert!(t <= n);
    (1u64 << n) - (1u64 << (n - t))
}

/// If `E` has no `(t+1)`-dimensional flat then `|E| ≤ 2ⁿ(1 − 2^{−t})`; a
/// violation is reported as an internal consistency failure.
pub fn bose_burton_check(m: &Matroid, t: usize, budget: SearchBudget) -> Result<BoseBurtonVerdict> {
    let n = m.dim();
    if t > n {
        return Err(Error::precondition(format!("t = {t} exceeds n = {n}")));
    }
    let largest = largest_flat_in(m, budget)?;
    bose_burton_from_largest(m, t, &largest)
}

fn bose_burton_from_largest(m: &Matroid, t: usize, largest: &Subspace) -> Result<BoseBurtonVerdict> {
    let n = m.dim();
    let size = m.len();
    if largest.dim() > t {
        // Any (t+1)-dim subspace of the largest flat will do.
        let flat = Subspace::span(n, largest.basis()[..t + 1].iter().copied());
        return Ok(BoseBurtonVerdict {
            dim: n,
            t,
            size,
            flat: Some(flat),
            bound: None,
            within_bound: None,
        });
    }
    let bound = bose_burton_bound(n, t);
    if size as u64 > bound {
        return Err(Error::internal(format!(
            "flat-free set of size {size} exceeds 2^{n}(1-2^-{t}) = {bound}"
        )));
    }
    Ok(BoseBurtonVerdict {
        dim: n,
        t,
        size,
        flat: None,
        bound: Some(bound),
        within_bound: Some(true),
    })
}

/// Per-`t` maxima of flat-free sets over every subset of PG(n-1, 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoseBurtonSweep {
    pub dim: usize,
    pub subsets: u64,
    /// `max_flat_free[t]`: largest `|E|` with no (t+1)-flat.
    pub max_flat_free: Vec<usize>,
    pub bounds: Vec<u64>,
}

/// Largest dimension for which every subset is enumerated.
pub const BOSE_BURTON_EXHAUSTIVE_CAP: usize = 4;

/// Checks the bound for every subset of PG(n-1, 2) and every `t ≤ n`.
pub fn bose_burton_exhaustive(n: usize, budget: SearchBudget) -> Result<BoseBurtonSweep> {
    crate::error::check_dim("bose_burton_exhaustive", n, BOSE_BURTON_EXHAUSTIVE_CAP)?;
    let points = (1usize << n) - 1;
    let mut max_flat_free = vec![0usize; n + 1];
    for mask in 0u64..1 << points {
        let m = Matroid::from_points(
            n,
            (0..points).filter(|&i| mask >> i & 1 == 1).map(|i| (i + 1) as Vector),
        )?;
        let largest = largest_flat_in(&m, budget)?;
        for (t, best) in max_flat_free.iter_mut().enumerate() {
            let v = bose_burton_from_largest(&m, t, &largest)?;
            if v.flat.is_none() {
                *best = (*best).max(v.size);
            }
        }
    }
    Ok(BoseBurtonSweep {
        dim: n,
        subsets: 1 << points,
        max_flat_free,
        bounds: (0..=n).map(|t| bose_burton_bound(n, t)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::affine_geometry;

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn monochromatic_examples() {
        let col = Coloring::uniform(4, 2);
        let (c, flat) = find_monochromatic_flat(&col, 4, b()).unwrap().unwrap();
        assert_eq!((c, flat), (0, Subspace::full(4)));
        let parity = Coloring::new(3, 2, (1..8u32).map(|v| v.count_ones() % 2).collect()).unwrap();
        assert!(find_monochromatic_flat(&parity, 1, b()).unwrap().is_some());
    }

    #[test]
    fn parity_coloring_of_fano_plane() {
        // Brute force over the 7 lines of PG(2,2).
        let parity = Coloring::new(3, 2, (1..8u32).map(|v| v.count_ones() % 2).collect()).unwrap();
        let mut brute = None;
        for a in 1..8u32 {
            for bb in a + 1..8 {
                let line = [a, bb, a ^ bb];
                let c = parity.color_of(a);
                if line.iter().all(|&v| parity.color_of(v) == c) && brute.is_none() {
                    brute = Some(c);
                }
            }
        }
        let found = find_monochromatic_flat(&parity, 2, b()).unwrap();
        assert_eq!(found.map(|(c, _)| c), brute);
        // Even-weight points {3,5,6} form a line.
        assert_eq!(brute, Some(0));
    }

    #[test]
    fn gr_trivial_cases() {
        for r in 1..=3 {
            let g = gr_search(1, r, 5, Pruning::ColorSymmetry, b()).unwrap();
            assert_eq!(g.n, Some(r));
            assert_eq!(g.certificates.len(), r - 1);
        }
        assert_eq!(gr_search(2, 1, 4, Pruning::ColorSymmetry, b()).unwrap().n, Some(1));
    }

    #[test]
    fn gr_two_colours_lines() {
        let g = gr_search(2, 2, 5, Pruning::ColorSymmetry, b()).unwrap();
        let raw = gr_search(2, 2, 5, Pruning::None, b()).unwrap();
        assert_eq!(g.n, raw.n);
        assert_eq!(g.n, Some(3));
        assert_eq!(g.certificates.len(), 2);
    }

    #[test]
    fn bose_burton_examples() {
        for n in 2..=5 {
            let v = bose_burton_check(&affine_geometry(n).unwrap(), 1, b()).unwrap();
            assert!(v.flat.is_none());
            assert_eq!(v.bound, Some(1 << (n - 1)));
            assert_eq!(v.size as u64, v.bound.unwrap());
        }
        let v = bose_burton_check(&Matroid::full(4), 2, b()).unwrap();
        assert_eq!(v.flat.as_ref().map(|f| f.dim()), Some(3));
        assert!(v.bound.is_none());
    }

    #[test]
    fn exhaustive_three_dims() {
        let sweep = bose_burton_exhaustive(3, b()).unwrap();
        assert_eq!(sweep.max_flat_free[1], 4);
        assert_eq!(sweep.max_flat_free, vec![0, 4, 6, 7]);
        assert!(bose_burton_exhaustive(5, b()).is_err());
    }
}
