//! Definition-level oracles over plain integer vectors. Nothing here calls
//! the library.

#![allow(dead_code)]

use std::collections::HashSet;

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

pub fn dim_of(space: &[V]) -> usize {
    space.len().trailing_zeros() as usize
}

/// Every subspace of F₂ⁿ as a sorted element list.
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

/// Every affine flat (coset of a subspace) of F₂ⁿ as a sorted element list.
pub fn all_affine_flats(n: usize) -> Vec<Vec<V>> {
    let mut seen = HashSet::new();
    for s in all_subspaces(n) {
        for a in 0..1u32 << n {
            let mut c: Vec<V> = s.iter().map(|&x| x ^ a).collect();
            c.sort_unstable();
            seen.insert(c);
        }
    }
    seen.into_iter().collect()
}

pub fn indicator(n: usize, pts: &[V]) -> Vec<bool> {
    let mut v = vec![false; 1 << n];
    for &p in pts {
        v[p as usize] = true;
    }
    v
}

pub fn largest_contained(flats: &[Vec<V>], ind: &[bool]) -> Option<usize> {
    flats
        .iter()
        .filter(|f| f.iter().all(|&v| ind[v as usize]))
        .map(|f| dim_of(f))
        .max()
}

pub fn triangle_free(ground: &[V]) -> bool {
    let set: HashSet<V> = ground.iter().copied().collect();
    ground
        .iter()
        .enumerate()
        .all(|(i, &a)| ground[i + 1..].iter().all(|&b| !set.contains(&(a ^ b))))
}

pub fn i1t_free(n: usize, ground: &[V], t: usize, subspaces: &[Vec<V>]) -> bool {
    let ind = indicator(n, ground);
    subspaces
        .iter()
        .filter(|s| dim_of(s) == t)
        .all(|s| s.iter().filter(|&&v| ind[v as usize]).count() != 1)
}

/// Image of `w` under the linear map sending `e_i` to `images[i]`.
pub fn apply(images: &[V], w: V) -> V {
    images
        .iter()
        .enumerate()
        .filter(|(i, _)| w >> i & 1 == 1)
        .fold(0, |acc, (_, &b)| acc ^ b)
}

/// Tries every linear injection F₂^p → F₂ⁿ.
pub fn embedding_exists(
    host_n: usize,
    host: &[V],
    pat_n: usize,
    pattern: &[V],
    induced: bool,
) -> bool {
    fn rec(
        host_n: usize,
        hind: &[bool],
        pat_n: usize,
        pind: &[bool],
        induced: bool,
        images: &mut Vec<V>,
    ) -> bool {
        if images.len() == pat_n {
            return (1..1u32 << pat_n).all(|w| {
                let v = apply(images, w);
                if pind[w as usize] {
                    hind[v as usize]
                } else {
                    !induced || !hind[v as usize]
                }
            });
        }
        let spanned = span(images);
        for v in 1..1u32 << host_n {
            if spanned.contains(&v) {
                continue;
            }
            images.push(v);
            if rec(host_n, hind, pat_n, pind, induced, images) {
                return true;
            }
            images.pop();
        }
        false
    }
    if pat_n > host_n {
        return false;
    }
    rec(
        host_n,
        &indicator(host_n, host),
        pat_n,
        &indicator(pat_n, pattern),
        induced,
        &mut Vec::new(),
    )
}

/// `counts[u] = #{(a, b, c) ∈ X³ : a + b + c = u}` via the pair histogram.
pub fn triple_counts(n: usize, x: &[V]) -> Vec<u64> {
    let size = 1usize << n;
    let mut pairs = vec![0u64; size];
    for &a in x {
        for &b in x {
            pairs[(a ^ b) as usize] += 1;
        }
    }
    let ind = indicator(n, x);
    (0..size)
        .map(|u| (0..size).filter(|&s| ind[s ^ u]).map(|s| pairs[s]).sum())
        .collect()
}

/// `|H ∩ X| − |X \ H|` for the hyperplane `H = a^⊥`, counted directly.
pub fn hyperplane_imbalance(x: &[V], a: V) -> i64 {
    x.iter()
        .map(|&v| if (v & a).count_ones() % 2 == 0 { 1 } else { -1 })
        .sum()
}
