//! Walsh–Hadamard machinery over F₂ⁿ.
//!
//! For a set `X`, the coefficient at character `a` is
//! `Σ_{x∈X} (−1)^{a·x}`; for `a ≠ 0` this is `|H ∩ X| − |X \ H|` with `H` the
//! hyperplane `a^⊥`. Cubing the spectrum and inverting gives the number of
//! solutions of `x₁ + x₂ + x₃ = u` in `X³` for every `u` at once.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::gf2::{PointSet, Vector};
use crate::rational::{abs_at_most, Rational};

/// Cap for [`triple_counts`]: cubed coefficients and their sums stay well
/// inside `i128`.
pub const TRIPLE_COUNT_CAP: usize = 20;

/// In-place unnormalised Walsh–Hadamard transform.
pub fn fwht_in_place<T>(data: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = data.len();
    assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Integer Walsh–Hadamard coefficients of an indicator vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    n: usize,
    coeffs: Vec<i64>,
}

impl SpectrumTable {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `|X|`, the coefficient of the trivial character.
    pub fn size(&self) -> i64 {
        self.coeffs[0]
    }

    /// Σ_a coeffs[a]², which equals 2ⁿ·|X| (Parseval).
    pub fn energy(&self) -> i128 {
        self.coeffs.iter().map(|&c| (c as i128) * (c as i128)).sum()
    }

    /// Largest nonzero-character coefficient in absolute value, least index
    /// on ties. `None` when n = 0.
    pub fn worst_character(&self) -> Option<(Vector, i64)> {
        let mut best: Option<(Vector, i64)> = None;
        for (a, &c) in self.coeffs.iter().enumerate().skip(1) {
            if best.is_none_or(|(_, b)| c.abs() > b.abs()) {
                best = Some((a as Vector, c));
            }
        }
        best
    }
}

/// Spectrum of the indicator of `x`, using O(n·2ⁿ) additions.
pub fn wht(x: &PointSet) -> SpectrumTable {
    let mut coeffs: Vec<i64> = (0..x.universe())
        .map(|v| x.contains(v as Vector) as i64)
        .collect();
    fwht_in_place(&mut coeffs);
    SpectrumTable { n: x.dim(), coeffs }
}

/// Spectrum of an arbitrary indicator slice (length a power of two).
pub(crate) fn wht_of_indicator(indicator: &[bool]) -> Vec<i64> {
    let mut coeffs: Vec<i64> = indicator.iter().map(|&b| b as i64).collect();
    fwht_in_place(&mut coeffs);
    coeffs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UniformityVerdict {
    pub uniform: bool,
    /// Argmax of |coeffs[a]| over a ≠ 0 (least index on ties); `None` in
    /// dimension 0 where there are no hyperplanes.
    pub worst_character: Option<Vector>,
    /// |coeffs[worst_character]|, the worst hyperplane imbalance.
    pub worst_imbalance: i64,
}

/// Uniformity verdict from precomputed coefficients; `|V| = coeffs.len()`.
pub(crate) fn uniformity_of(coeffs: &[i64], eps: Rational) -> UniformityVerdict {
    let mut worst: Option<(Vector, i64)> = None;
    for (a, &c) in coeffs.iter().enumerate().skip(1) {
        if worst.is_none_or(|(_, b)| c.abs() > b) {
            worst = Some((a as Vector, c.abs()));
        }
    }
    let imbalance = worst.map_or(0, |(_, b)| b);
    UniformityVerdict {
        uniform: abs_at_most(imbalance, eps, coeffs.len() as u64),
        worst_character: worst.map(|(a, _)| a),
        worst_imbalance: imbalance,
    }
}

/// X is ε-uniform iff every hyperplane `H` has `||H ∩ X| − |X \ H|| ≤ ε·2ⁿ`.
pub fn is_epsilon_uniform(x: &PointSet, eps: Rational) -> UniformityVerdict {
    uniformity_of(&wht(x).coeffs, eps)
}

/// `counts[u] = #{(x₁,x₂,x₃) ∈ X³ : x₁ ⊕ x₂ ⊕ x₃ = u}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCountTable {
    n: usize,
    counts: Vec<u64>,
}

impl TripleCountTable {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, u: Vector) -> u64 {
        self.counts[u as usize]
    }

    /// The support `{u : counts[u] > 0}`, i.e. `X + X + X`.
    pub fn support(&self) -> PointSet {
        PointSet::from_points(
            self.n,
            (0..self.counts.len())
                .filter(|&u| self.counts[u] > 0)
                .map(|u| u as Vector),
        )
    }
}

/// Exact triple counts: cube the spectrum, invert, divide by 2ⁿ.
pub fn triple_counts(x: &PointSet) -> Result<TripleCountTable> {
    check_dim("triple_counts", x.dim(), TRIPLE_COUNT_CAP)?;
    let n = x.dim();
    let spectrum = wht(x);
    let mut cubes: Vec<i128> = spectrum
        .coeffs
        .iter()
        .map(|&c| {
            let c = c as i128;
            c * c * c
        })
        .collect();
    fwht_in_place(&mut cubes);
    let mut counts = Vec::with_capacity(cubes.len());
    for (u, total) in cubes.into_iter().enumerate() {
        if total < 0 || total & ((1i128 << n) - 1) != 0 {
            return Err(Error::internal(format!(
                "inverse transform at u={u} gave {total}, not a non-negative multiple of 2^{n}"
            )));
        }
        counts.push((total >> n) as u64);
    }
    Ok(TripleCountTable { n, counts })
}

/// `X + X + X` as a point set.
pub fn sumset3_support(x: &PointSet) -> Result<PointSet> {
    Ok(triple_counts(x)?.support())
}

/// Precomputed lower bound `(α³ − ε)·|V|²` for a fixed ε-uniform set.
#[derive(Clone, Debug)]
pub struct CountingBound {
    table: TripleCountTable,
    /// Least integer count satisfying the bound.
    threshold: i128,
}

impl CountingBound {
    /// Fails with a precondition error if `x` is not ε-uniform.
    pub fn new(x: &PointSet, eps: Rational) -> Result<Self> {
        let verdict = is_epsilon_uniform(x, eps);
        if !verdict.uniform {
            return Err(Error::precondition(format!(
                "set is not {eps}-uniform (character {:?} has imbalance {})",
                verdict.worst_character, verdict.worst_imbalance
            )));
        }
        let n = x.dim();
        let size = BigInt::from(x.len());
        let cube = &size * &size * &size;
        // (α³ − ε)·2^{2n} = |X|³ / 2ⁿ − ε·2^{2n}
        let bound = BigRational::new(cube, BigInt::from(1u64) << n)
            - BigRational::new(
                BigInt::from(*eps.numer()) << (2 * n),
                BigInt::from(*eps.denom()),
            );
        let ceil = bound.ceil().to_integer();
        let threshold: i128 = if ceil.is_negative() {
            0
        } else {
            ceil.try_into().map_err(|_| Error::internal("bound overflow"))?
        };
        Ok(CountingBound {
            table: triple_counts(x)?,
            threshold,
        })
    }

    pub fn threshold(&self) -> i128 {
        self.threshold
    }

    pub fn table(&self) -> &TripleCountTable {
        &self.table
    }

    pub fn holds_at(&self, u: Vector) -> bool {
        self.table.get(u) as i128 >= self.threshold
    }

    /// First `u` at which the bound fails, if any.
    pub fn first_violation(&self) -> Option<Vector> {
        (0..self.table.counts.len() as Vector).find(|&u| !self.holds_at(u))
    }
}

/// `counts[u] ≥ (α³ − ε)·2^{2n}` with `α = |X|/2ⁿ`, compared exactly.
/// Errors when `x` is not ε-uniform.
pub fn counting_bound_check(x: &PointSet, eps: Rational, u: Vector) -> Result<bool> {
    Ok(CountingBound::new(x, eps)?.holds_at(u))
}
