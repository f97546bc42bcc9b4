//! ε-regular subspaces and the dense-sumset witness.
//!
//! A subspace `H` is ε-regular for `X` when all but an ε-fraction of its
//! cosets `H + a` carry an ε-uniform translated slice `(X ∩ (H + a)) + a`,
//! uniformity being measured inside `H`. [`refine_to_regular`] finds such an
//! `H` by energy increment: while some slices are non-uniform, the most
//! common witnessing character is adjoined to the dual of `H`. The mean
//! square coset density never decreases under refinement and the process
//! stops at codimension `n` at the latest, where every slice is a single
//! point of a zero-dimensional space.
//!
//! The existence bound for the regularity codimension is a tower of 2's of
//! height ⌈ε⁻³⌉; it is far beyond anything materialisable and is not
//! enforced. `max_codim` is the practical cap instead.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{check_dim, Error, Result};
use crate::fourier::{triple_counts, uniformity_of, wht_of_indicator, TRIPLE_COUNT_CAP};
use crate::gf2::{coset_shifts, top_bit, AffineFlat, PointSet, Subspace, Vector};
use crate::rational::{check_open_interval, Rational};

/// Verdict for one coset `H + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetVerdict {
    /// Canonical (least) representative of the coset.
    pub shift: Vector,
    /// `|X ∩ (H + shift)|`; the density is `count / |H|`.
    pub count: u64,
    pub uniform: bool,
    /// Worst character of the slice, lifted to F₂ⁿ (vanishing on the
    /// canonical complement of `H`). Present only for non-uniform slices.
    pub witness_character: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub subspace: Subspace,
    pub codim: usize,
    pub epsilon: Rational,
    /// One entry per coset, in [`coset_shifts`] order.
    pub coset_verdicts: Vec<CosetVerdict>,
    /// Indices of cosets whose slice is not ε-uniform.
    pub bad_set: Vec<usize>,
    /// Indices of cosets with density below α/2; filled by
    /// [`RegularityReport::with_sparse_threshold`].
    pub sparse_set: Option<Vec<usize>>,
    /// `|bad_set| ≤ ε·2^codim`.
    pub regular: bool,
    /// Mean square coset density `2^-codim Σ_a (|X ∩ (H+a)| / |H|)²`.
    pub energy: Ratio<i128>,
}

impl RegularityReport {
    pub fn coset_size(&self) -> u64 {
        1 << self.subspace.dim()
    }

    pub fn density(&self, index: usize) -> Ratio<i128> {
        Ratio::new(
            self.coset_verdicts[index].count as i128,
            self.coset_size() as i128,
        )
    }

    /// Fills `sparse_set` with the cosets of density `< alpha / 2`.
    pub fn with_sparse_threshold(mut self, alpha: Rational) -> Self {
        let h = self.coset_size() as i128;
        let (num, den) = (*alpha.numer() as i128, *alpha.denom() as i128);
        self.sparse_set = Some(
            self.coset_verdicts
                .iter()
                .enumerate()
                .filter(|(_, v)| 2 * (v.count as i128) * den < num * h)
                .map(|(i, _)| i)
                .collect(),
        );
        self
    }
}

/// Character on F₂ⁿ that restricts to the internal character `w` on `h`
/// and vanishes on the canonical complement of `h`.
pub fn lift_character(h: &Subspace, w: Vector) -> Vector {
    let d = h.dim();
    let basis = h.basis();
    (0..d)
        .filter(|&i| w >> i & 1 == 1)
        .fold(0, |chi, i| chi | 1 << top_bit(basis[d - 1 - i]))
}

/// Builds the full report for `h`.
pub fn is_epsilon_regular(h: &Subspace, x: &PointSet, eps: Rational) -> Result<RegularityReport> {
    check_open_interval("epsilon", eps, Rational::new(1, 2))?;
    if h.ambient_dim() != x.dim() {
        return Err(Error::precondition("subspace and set live in different spaces"));
    }
    let elems = h.elements();
    let shifts = coset_shifts(h);
    let coset_verdicts: Vec<CosetVerdict> = shifts
        .par_iter()
        .map(|&a| {
            let indicator: Vec<bool> = elems.iter().map(|&e| x.contains(a ^ e)).collect();
            let count = indicator.iter().filter(|&&b| b).count() as u64;
            let verdict = uniformity_of(&wht_of_indicator(&indicator), eps);
            CosetVerdict {
                shift: a,
                count,
                uniform: verdict.uniform,
                witness_character: if verdict.uniform {
                    None
                } else {
                    verdict.worst_character.map(|w| lift_character(h, w))
                },
            }
        })
        .collect();
    let bad_set: Vec<usize> = coset_verdicts
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.uniform)
        .map(|(i, _)| i)
        .collect();
    let codim = h.codim();
    let regular = (bad_set.len() as i128) * (*eps.denom() as i128)
        <= (*eps.numer() as i128) * (1i128 << codim);
    let square_sum: i128 = coset_verdicts
        .iter()
        .map(|v| (v.count as i128) * (v.count as i128))
        .sum();
    let energy = Ratio::new(square_sum, 1i128 << (codim + 2 * h.dim()));
    Ok(RegularityReport {
        subspace: h.clone(),
        codim,
        epsilon: eps,
        coset_verdicts,
        bad_set,
        sparse_set: None,
        regular,
        energy,
    })
}

/// Result of [`refine_to_regular`].
#[derive(Clone, Debug)]
pub struct Refinement {
    pub report: RegularityReport,
    /// Energy of each visited subspace, starting from `H = V`.
    pub energies: Vec<Ratio<i128>>,
    /// Characters adjoined to the dual of `H`, in order.
    pub characters: Vec<Vector>,
}

/// Refines `H = V` one character at a time until it is ε-regular for `x`.
pub fn refine_to_regular(x: &PointSet, eps: Rational, max_codim: usize) -> Result<Refinement> {
    check_open_interval("epsilon", eps, Rational::new(1, 2))?;
    let n = x.dim();
    if max_codim > n {
        return Err(Error::precondition(format!(
            "max_codim {max_codim} exceeds the dimension {n}"
        )));
    }
    let mut h = Subspace::full(n);
    let mut energies = Vec::new();
    let mut characters = Vec::new();
    loop {
        let report = is_epsilon_regular(&h, x, eps)?;
        if let Some(&prev) = energies.last() {
            if report.energy < prev {
                return Err(Error::internal(format!(
                    "energy decreased from {prev} to {} at codimension {}",
                    report.energy, report.codim
                )));
            }
        }
        energies.push(report.energy);
        if report.regular {
            return Ok(Refinement {
                report,
                energies,
                characters,
            });
        }
        if report.codim >= max_codim {
            return Err(Error::CodimBudgetExceeded {
                max_codim,
                last: Box::new(report),
            });
        }
        let mut tally: BTreeMap<Vector, usize> = BTreeMap::new();
        for v in &report.coset_verdicts {
            if let Some(chi) = v.witness_character {
                *tally.entry(chi).or_default() += 1;
            }
        }
        // Most frequent witness; BTreeMap order makes the least index win ties.
        let (&chi, _) = tally
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .ok_or_else(|| Error::internal("irregular subspace without witnesses"))?;
        let next = h.intersect_kernel(chi);
        if next.dim() + 1 != h.dim() {
            return Err(Error::internal("witness character is trivial on H"));
        }
        h = next;
        characters.push(chi);
    }
}

/// Default refinement cap: `min(n, 12)`.
pub fn default_max_codim(n: usize) -> usize {
    n.min(12)
}

/// A coset `H + a₀` contained in `X + X + X`.
#[derive(Clone, Debug)]
pub struct KeyLemmaWitness {
    /// `H + a₀`; linear when `a₀ ∈ H`.
    pub flat: AffineFlat,
    /// `a₀`, the canonical shift of the chosen coset.
    pub good_coset: Vector,
    /// Index of `a₀` among the cosets of `H`.
    pub good_coset_index: usize,
    pub epsilon_used: Rational,
    /// Every point of `flat` has a positive triple count.
    pub verified: bool,
    pub report: RegularityReport,
    pub energies: Vec<Ratio<i128>>,
}

impl KeyLemmaWitness {
    pub fn codim(&self) -> usize {
        self.report.codim
    }

    /// A linear witness (a₀ ∈ H) is the stronger of the two outcomes.
    pub fn is_linear(&self) -> bool {
        self.flat.is_linear()
    }
}

/// `α³ / 9`, computed exactly.
pub fn key_lemma_epsilon(alpha: Rational) -> Result<Rational> {
    let (p, q) = (*alpha.numer(), *alpha.denom());
    let overflow = || Error::precondition(format!("alpha = {alpha} is too fine-grained"));
    let num = p.checked_pow(3).ok_or_else(overflow)?;
    let den = q
        .checked_pow(3)
        .and_then(|d| d.checked_mul(9))
        .ok_or_else(overflow)?;
    Ok(Rational::new(num, den))
}

/// Regularises `x` at ε = α³/9 and returns a coset of the regular subspace
/// that lies inside `X + X + X`, checked point by point.
pub fn key_lemma_witness(x: &PointSet, alpha: Rational, max_codim: usize) -> Result<KeyLemmaWitness> {
    check_dim("key_lemma_witness", x.dim(), TRIPLE_COUNT_CAP)?;
    if *alpha.numer() <= 0 || alpha > Rational::from_integer(1) {
        return Err(Error::precondition(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    let n = x.dim();
    let size = x.len() as i128;
    if size * (*alpha.denom() as i128) < (*alpha.numer() as i128) * (1i128 << n) {
        return Err(Error::precondition(format!(
            "|X| = {size} is below alpha·2^n with alpha = {alpha}"
        )));
    }
    let eps = key_lemma_epsilon(alpha)?;
    let refinement = refine_to_regular(x, eps, max_codim)?;
    let report = refinement.report.with_sparse_threshold(alpha);
    let sparse = report.sparse_set.as_deref().unwrap_or_default();
    let index = (0..report.coset_verdicts.len())
        .find(|i| sparse.binary_search(i).is_err() && report.bad_set.binary_search(i).is_err())
        .ok_or_else(|| {
            Error::internal(format!(
                "every coset of the regular subspace is sparse or non-uniform \
                 (codim {}, {} sparse, {} bad)",
                report.codim,
                sparse.len(),
                report.bad_set.len()
            ))
        })?;
    let a0 = report.coset_verdicts[index].shift;
    let flat = AffineFlat::new(report.subspace.clone(), a0);
    let counts = triple_counts(x)?;
    let verified = flat.elements().iter().all(|&u| counts.get(u) > 0);
    Ok(KeyLemmaWitness {
        flat,
        good_coset: a0,
        good_coset_index: index,
        epsilon_used: eps,
        verified,
        report,
        energies: refinement.energies,
    })
}
