//! Brute-force oracles and samplers shared by the acceptance suite. None of
//! these call into the library; they work on plain vectors of integers.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;

pub type V = u32;

pub fn span(gens: &[V]) -> Vec<V> {
    let mut out = vec![0];
    for &g in gens {
        if !out.contains(&g) {
            let shifted: Vec<V> = out.iter().map(|&x| x ^ g).collect();
            out.extend(shifted);
        }
    }
    out.sort_unstable();
    out
}

/// Every subspace of F₂ⁿ as a sorted element list, by closing `{0}` under
/// adjoining one vector at a time. Intended for n ≤ 6.
pub fn all_subspaces(n: usize) -> Vec<Vec<V>> {
    let mut seen: HashSet<Vec<V>> = HashSet::new();
    let mut frontier = vec![vec![0]];
    seen.insert(vec![0]);
    while let Some(s) = frontier.pop() {
        for v in 1..1u32 << n {
            if s.binary_search(&v).is_ok() {
                continue;
            }
            let mut t = s.clone();
            t.extend(s.iter().map(|&x| x ^ v));
            t.sort_unstable();
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let mut all: Vec<Vec<V>> = seen.into_iter().collect();
    all.sort();
    all
}

pub fn dim_of(space: &[V]) -> usize {
    space.len().trailing_zeros() as usize
}

/// Largest d such that some d-dimensional subspace has every element in
/// `allowed` (indexed by vector). Plain backtracking over increasing
/// vectors, each the least member of its coset of the current span.
pub fn largest_subspace_dim(allowed: &[bool]) -> usize {
    fn grow(allowed: &[bool], span: &mut Vec<V>, start: V, best: &mut usize) {
        let d = dim_of(span);
        *best = (*best).max(d);
        for v in start..allowed.len() as V {
            if span.iter().any(|&s| v ^ s < v) {
                continue;
            }
            if !span.iter().all(|&s| allowed[(v ^ s) as usize]) {
                continue;
            }
            let old = span.len();
            for i in 0..old {
                let x = span[i] ^ v;
                span.push(x);
            }
            grow(allowed, span, v + 1, best);
            span.truncate(old);
        }
    }
    if !allowed[0] {
        return 0;
    }
    let mut best = 0;
    grow(allowed, &mut vec![0], 1, &mut best);
    best
}

/// χ of `(E, PG(n-1, 2))` from the definition.
pub fn chi_oracle(n: usize, ground: &[V]) -> usize {
    let mut allowed = vec![true; 1 << n];
    for &e in ground {
        allowed[e as usize] = false;
    }
    n - largest_subspace_dim(&allowed)
}

pub fn indicator(n: usize, pts: &[V]) -> Vec<bool> {
    let mut v = vec![false; 1 << n];
    for &p in pts {
        v[p as usize] = true;
    }
    v
}

pub fn triangle_free_oracle(ground: &[V]) -> bool {
    let set: HashSet<V> = ground.iter().copied().collect();
    for (i, &a) in ground.iter().enumerate() {
        for &b in &ground[i + 1..] {
            if set.contains(&(a ^ b)) {
                return false;
            }
        }
    }
    true
}

/// No t-dimensional subspace meets `ground` in exactly one point.
pub fn i1t_free_oracle(n: usize, ground: &[V], t: usize, subspaces: &[Vec<V>]) -> bool {
    let ind = indicator(n, ground);
    subspaces
        .iter()
        .filter(|s| dim_of(s) == t)
        .all(|s| s.iter().filter(|&&v| ind[v as usize]).count() != 1)
}

/// Triple counts from the pair-sum histogram: O(|X|²) pairs, then one pass
/// over all (s, u).
pub fn triple_counts_oracle(n: usize, x: &[V]) -> Vec<u64> {
    let size = 1usize << n;
    let mut pairs = vec![0u64; size];
    for &a in x {
        for &b in x {
            pairs[(a ^ b) as usize] += 1;
        }
    }
    let ind = indicator(n, x);
    (0..size)
        .map(|u| {
            (0..size)
                .filter(|&s| ind[s ^ u])
                .map(|s| pairs[s])
                .sum()
        })
        .collect()
}

/// Parity of `row · v`.
fn dot(row: V, v: V) -> bool {
    (row & v).count_ones() % 2 == 1
}

/// A uniformly random linear surjection F₂ⁿ → F₂^d as `d` row masks.
pub fn random_surjection<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<V> {
    loop {
        let rows: Vec<V> = (0..d).map(|_| rng.gen_range(0..1u32 << n)).collect();
        if dim_of(&span(&rows)) == d {
            return rows;
        }
    }
}

pub fn apply_rows(rows: &[V], v: V) -> V {
    rows.iter()
        .enumerate()
        .fold(0, |acc, (i, &r)| acc | (dot(r, v) as V) << i)
}

/// `π⁻¹(base)` for a linear surjection π given by `rows`.
pub fn preimage(n: usize, rows: &[V], base: &[bool]) -> Vec<V> {
    (1..1u32 << n)
        .filter(|&v| base[apply_rows(rows, v) as usize])
        .collect()
}

/// All subsets of PG(d-1, 2) that are triangle-free and I_{1,3}-free,
/// for d ≤ 4.
pub fn tf_i13_free_bases(d: usize) -> Vec<Vec<V>> {
    let subspaces = all_subspaces(d);
    let points = (1usize << d) - 1;
    (0u32..1 << points)
        .map(|mask| {
            (0..points as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect::<Vec<V>>()
        })
        .filter(|g| !g.is_empty() && triangle_free_oracle(g))
        .filter(|g| d < 3 || i1t_free_oracle(d, g, 3, &subspaces))
        .collect()
}

/// A random subset of F₂ⁿ with each vector kept with probability `p/8`.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, p: u32) -> Vec<V> {
    (0..1u32 << n).filter(|_| rng.gen_range(0..8) < p).collect()
}

/// A subset of F₂ⁿ whose density varies over the cosets of a random
/// codimension-`c` subspace, so that refinement has structure to find.
pub fn coset_structured_subset<R: Rng>(rng: &mut R, n: usize, c: usize) -> Vec<V> {
    let rows = random_surjection(rng, n, c);
    let densities: Vec<u32> = (0..1 << c).map(|_| rng.gen_range(0..=8)).collect();
    (0..1u32 << n)
        .filter(|&v| rng.gen_range(0..8) < densities[apply_rows(&rows, v) as usize])
        .collect()
}
