mod oracle;

use std::sync::OnceLock;

use proptest::collection::vec;
use proptest::prelude::*;

use binmat::gf2::{
    closure, complement_flat, cosets, find_subspace, flat_points, for_each_subspace,
    largest_affine_in, largest_subspace_in,
};
use binmat::{AffineFlat, PointSet, SearchBudget, Subspace};

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn affine_flats(n: usize) -> &'static [Vec<u32>] {
    static CACHE: OnceLock<Vec<Vec<Vec<u32>>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=6).map(oracle::all_affine_flats).collect())[n]
}

fn subspaces(n: usize) -> &'static [Vec<u32>] {
    static CACHE: OnceLock<Vec<Vec<Vec<u32>>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=6).map(oracle::all_subspaces).collect())[n]
}

fn set_in(n: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1..=n).prop_flat_map(|n| (Just(n), vec(0..1u32 << n, 0..1 << n)))
}

fn subspace_in(max_n: usize) -> impl Strategy<Value = Subspace> {
    (1..=max_n).prop_flat_map(|n| vec(0..1u32 << n, 0..=n).prop_map(move |g| Subspace::span(n, g)))
}

#[test]
fn subspace_counts_match_gaussian_binomials() {
    // Number of d-dim subspaces of F₂⁴: 1, 15, 35, 15, 1.
    let expected = [1u64, 15, 35, 15, 1];
    for (d, &want) in expected.iter().enumerate() {
        let mut count = 0;
        for_each_subspace(&PointSet::full(4), d, budget(), |_| {
            count += 1;
            true
        })
        .unwrap();
        assert_eq!(count, want, "dimension {d}");
    }
    let by_dim = |d| subspaces(4).iter().filter(|s| oracle::dim_of(s) == d).count() as u64;
    assert_eq!((0..=4).map(by_dim).collect::<Vec<_>>(), expected);
}

proptest! {
    #[test]
    fn closure_is_the_least_containing_subspace((n, pts) in set_in(6)) {
        let ps = PointSet::from_points(n, pts.iter().copied());
        let c = closure(&ps);
        prop_assert_eq!(c.elements_sorted(), oracle::span(&pts));
    }

    #[test]
    fn reduce_gives_least_coset_member(s in subspace_in(7), v in any::<u32>()) {
        let v = v & ((1 << s.ambient_dim()) - 1);
        let r = s.reduce(v);
        let coset: Vec<u32> = s.elements().iter().map(|&h| h ^ v).collect();
        prop_assert_eq!(r, *coset.iter().min().unwrap());
        prop_assert!(s.contains(r ^ v));
    }

    #[test]
    fn cosets_partition_the_space(s in subspace_in(7)) {
        let n = s.ambient_dim();
        let cs = cosets(&s);
        prop_assert_eq!(cs.len(), 1 << (n - s.dim()));
        prop_assert!(cs[0].is_linear());
        let mut seen = vec![0u8; 1 << n];
        for c in &cs {
            for v in c.elements() {
                seen[v as usize] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn complement_flat_is_a_complement(s in subspace_in(8)) {
        let w = complement_flat(&s);
        prop_assert_eq!(w.dim() + s.dim(), s.ambient_dim());
        prop_assert!(flat_points(&w).is_disjoint(&flat_points(&s)));
        prop_assert_eq!(s.join(&w), Subspace::full(s.ambient_dim()));
    }

    #[test]
    fn coordinates_round_trip(s in subspace_in(8)) {
        for (w, &v) in s.elements().iter().enumerate() {
            prop_assert_eq!(s.embed(w as u32), v);
            prop_assert_eq!(s.coords(v), Some(w as u32));
        }
    }

    #[test]
    fn kernel_intersection(s in subspace_in(7), chi in any::<u32>()) {
        let chi = chi & ((1 << s.ambient_dim()) - 1);
        let k = s.intersect_kernel(chi);
        let expect: Vec<u32> = s
            .elements_sorted()
            .into_iter()
            .filter(|&v| (v & chi).count_ones() % 2 == 0)
            .collect();
        prop_assert_eq!(k.elements_sorted(), expect);
    }

    #[test]
    fn translate_matches_pointwise((n, pts) in set_in(8), c in any::<u32>()) {
        let c = c & ((1 << n) - 1);
        let ps = PointSet::from_points(n, pts.iter().copied());
        let t = ps.translate(c);
        let expect = PointSet::from_points(n, pts.iter().map(|&v| v ^ c));
        prop_assert_eq!(t, expect);
    }

    #[test]
    fn largest_subspace_matches_oracle((n, pts) in set_in(6)) {
        let mut ps = PointSet::from_points(n, pts.iter().copied());
        ps.insert(0);
        let ind = oracle::indicator(n, &ps.to_vec());
        let got = largest_subspace_in(&ps, budget()).unwrap().unwrap();
        prop_assert_eq!(Some(got.dim()), oracle::largest_contained(subspaces(n), &ind));
        prop_assert!(got.elements().iter().all(|&v| ps.contains(v)));
        if got.dim() > 0 {
            let found = find_subspace(&ps, &Subspace::zero(n), got.dim(), budget()).unwrap();
            prop_assert!(found.is_some());
        }
        let above = find_subspace(&ps, &Subspace::zero(n), got.dim() + 1, budget()).unwrap();
        prop_assert!(above.is_none());
    }

    #[test]
    fn largest_affine_matches_oracle((n, pts) in set_in(6)) {
        let ps = PointSet::from_points(n, pts.iter().copied());
        let ind = oracle::indicator(n, &ps.to_vec());
        let got = largest_affine_in(&ps, budget()).unwrap();
        let want = oracle::largest_contained(affine_flats(n), &ind);
        prop_assert_eq!(got.as_ref().map(AffineFlat::dim), want);
        if let Some(a) = got {
            prop_assert!(a.elements().iter().all(|&v| ps.contains(v)));
        }
    }
}

#[test]
fn budget_exhaustion_is_an_error() {
    let full = PointSet::full(10);
    let r = largest_subspace_in(&full, SearchBudget::new(3));
    assert!(matches!(r, Err(binmat::Error::BudgetExceeded { .. })));
}
