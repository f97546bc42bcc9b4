mod oracle;

use std::sync::OnceLock;

use proptest::collection::vec;
use proptest::prelude::*;

use binmat::constructions::{c5t, tripod};
use binmat::pipeline::{
    chi_bound_pipeline, extract_x, g2_coloring, max_tripod_order, verify_thirdpoint,
    PipelineConfig, Strategy as Descent, TripodStop,
};
use binmat::{Matroid, PointSet, SearchBudget, Subspace};

fn subspaces(n: usize) -> &'static [Vec<u32>] {
    static CACHE: OnceLock<Vec<Vec<Vec<u32>>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=6).map(oracle::all_subspaces).collect())[n]
}

fn chi_oracle(m: &Matroid) -> usize {
    let n = m.dim();
    let outside: Vec<u32> = (0..1u32 << n).filter(|&v| !m.contains(v)).collect();
    let ind = oracle::indicator(n, &outside);
    n - oracle::largest_contained(subspaces(n), &ind).unwrap()
}

fn dot(a: u32, b: u32) -> u32 {
    (a & b).count_ones() % 2
}

/// Triangle-free, I_{1,3}-free matroids as preimages of small ones under a
/// random linear surjection `F₂ⁿ → F₂^d`.
fn tf_i13_free() -> impl Strategy<Value = Matroid> {
    (3usize..=6, 1usize..=3)
        .prop_flat_map(|(n, d)| (Just(n), Just(d), vec(0..1u32 << n, d), 1u32..1 << ((1 << d) - 1)))
        .prop_filter_map("base must be triangle-free and I_{1,3}-free", |(n, d, rows, mask)| {
            if oracle::dim_of(&oracle::span(&rows)) != d {
                return None;
            }
            let base: Vec<u32> = (1..1u32 << d).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            if !oracle::triangle_free(&base)
                || (d == 3 && !oracle::i1t_free(3, &base, 3, &oracle::all_subspaces(3)))
            {
                return None;
            }
            let ind = oracle::indicator(d, &base);
            let image = |v: u32| (0..d).fold(0, |acc, i| acc | dot(rows[i], v) << i);
            let pts: Vec<u32> = (1..1u32 << n).filter(|&v| ind[image(v) as usize]).collect();
            Some(Matroid::from_points(n, pts).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_flat_avoids_ground_and_bounds_chi(m in tf_i13_free(), regular in any::<bool>()) {
        let pts = m.ground().to_vec();
        prop_assert!(oracle::triangle_free(&pts));
        prop_assert!(oracle::i1t_free(m.dim(), &pts, 3, subspaces(m.dim())));
        let config = PipelineConfig {
            strategy: if regular { Descent::Regularity } else { Descent::ExhaustiveSearch },
            ..PipelineConfig::default()
        };
        let w = chi_bound_pipeline(&m, 3, &config).unwrap();
        prop_assert!(w.flat.elements().iter().all(|&v| !m.contains(v)));
        prop_assert_eq!(w.chi_bound, m.dim() - w.flat.dim());
        prop_assert!(w.chi_bound >= chi_oracle(&m));
        prop_assert_eq!(w.trace[0].t, 3);
        // No I_{1,3}-free, triangle-free matroid contains T_1.
        prop_assert_eq!(w.trace[0].tripod_order, Some(0));
    }

    #[test]
    fn g2_keys_and_x_match_definition(
        m in (4usize..=7).prop_flat_map(|n| {
            vec(1..1u32 << n, 0..1 << (n - 1))
                .prop_map(move |p| Matroid::from_points(n, p).unwrap())
        }),
        gens in vec(any::<u32>(), 1..4),
    ) {
        let n = m.dim();
        let g1 = Subspace::span(n, gens.iter().map(|g| g & ((1 << n) - 1)));
        let col = g2_coloring(&m, &g1);
        let g1s = oracle::span(&g1.basis().to_vec());
        let g2s = oracle::span(&col.g2.basis().to_vec());
        prop_assert_eq!(g1s.len() * g2s.len(), 1 << n);
        prop_assert!(g2s.iter().all(|v| *v == 0 || g1s.binary_search(v).is_err()));
        prop_assert_eq!(col.keys.len(), g2s.len() - 1);
        let g1_in_e: Vec<u32> = g1s.iter().copied().filter(|&g| m.contains(g)).collect();
        let x = extract_x(&col, &m);
        for ((v, key), &want_v) in col.keys.iter().zip(&g2s[1..]) {
            prop_assert_eq!(*v, want_v);
            prop_assert_eq!(key.e, m.contains(*v));
            let s: Vec<u32> = g1s[1..].iter().copied().filter(|&g| m.contains(v ^ g)).collect();
            prop_assert_eq!(&key.s, &s);
            let in_x = !key.e && g1_in_e.iter().all(|&g| m.contains(v ^ g));
            prop_assert_eq!(x.contains(*v), in_x);
        }
        prop_assert_eq!(x.len(), col.keys.iter().filter(|(v, _)| x.contains(*v)).count());

        prop_assert!(col.distinct_keys() as u128 <= 1u128 << col.key_bound_log2().min(127));

        // Third-point check against a direct triple loop.
        let xs = x.to_vec();
        let hit = xs.iter().any(|&a| xs.iter().any(|&b| xs.iter().any(|&c| m.contains(a ^ b ^ c))));
        prop_assert_eq!(verify_thirdpoint(&m, &col.g2, &x).unwrap(), !hit);
    }
}

#[test]
fn tripod_order_of_tripods_is_certified() {
    for k in 0..=2 {
        let t = tripod(k).unwrap().matroid;
        for extra in 0..=1 {
            let m = t.pad(t.dim() + extra);
            let order = max_tripod_order(&m, 8, SearchBudget::default()).unwrap();
            assert_eq!(order.k, k, "T_{k} padded by {extra}");
            assert!(order.certified());
            assert_eq!(order.g1.dim(), 3 * k + 1);
        }
    }
    let c5 = c5t(4).unwrap().pad(6);
    let order = max_tripod_order(&c5, 8, SearchBudget::default()).unwrap();
    assert_eq!((order.k, order.stop), (1, TripodStop::DimensionLimit));
}

#[test]
fn key_count_respects_bound_on_tripod_flats() {
    for k in 0..=2 {
        let t = tripod(k).unwrap().matroid;
        let m = t.pad(t.dim() + 3);
        let order = max_tripod_order(&m, 8, SearchBudget::default()).unwrap();
        let col = g2_coloring(&m, &order.g1);
        assert!(col.distinct_keys() as u128 <= col.stated_key_bound(), "k={k}");
        assert_eq!(col.stated_key_bound(), 1 << (3 * k + 2));
    }
}

/// Triangle-free in PG(9, 2) with maximal tripod order 1 (certified), yet
/// 36 distinct keys against the quoted count of 32. Every matroid of
/// dimension 10 is I_{1,11}-free, so the instance is in scope for any
/// `t > 10`.
const MANY_KEYS: [u32; 89] = [
    1, 3, 5, 9, 14, 37, 40, 49, 73, 78, 81, 83, 85, 109, 124, 139, 144, 148, 155, 162, 164, 187,
    189, 192, 205, 223, 224, 248, 256, 262, 277, 298, 300, 310, 316, 331, 332, 338, 340, 368,
    372, 394, 405, 416, 437, 447, 449, 467, 478, 485, 500, 505, 525, 534, 539, 544, 548, 556,
    565, 578, 582, 603, 605, 616, 650, 652, 661, 691, 705, 718, 721, 744, 754, 772, 789, 830,
    869, 895, 905, 907, 914, 918, 939, 948, 973, 982, 995, 1004, 1008,
];

#[test]
fn quoted_key_count_is_exceeded_but_valid_bound_holds() {
    let m = Matroid::from_points(10, MANY_KEYS).unwrap();
    assert!(oracle::triangle_free(&MANY_KEYS));
    let order = max_tripod_order(&m, 8, SearchBudget::default()).unwrap();
    assert_eq!((order.k, order.stop), (1, TripodStop::NoEmbedding));
    let col = g2_coloring(&m, &order.g1);
    assert_eq!(col.stated_key_bound(), 32);
    assert_eq!(col.distinct_keys(), 36);
    assert_eq!(col.key_bound_log2(), 16);
    // The keys, recomputed from the definition.
    let g1s = oracle::span(&order.g1.basis().to_vec());
    let g2s = oracle::span(&col.g2.basis().to_vec());
    let keys: std::collections::BTreeSet<(bool, Vec<u32>)> = g2s[1..]
        .iter()
        .map(|&v| (m.contains(v), g1s[1..].iter().copied().filter(|&g| m.contains(v ^ g)).collect()))
        .collect();
    assert_eq!(keys.len(), 36);
}

#[test]
fn x_for_c5_padded_matches_direct_definition() {
    let m = c5t(4).unwrap().pad(6);
    let g1 = Subspace::coordinate(6, 0..4);
    let col = g2_coloring(&m, &g1);
    let x = extract_x(&col, &m);
    let direct = PointSet::from_points(
        6,
        oracle::span(&col.g2.basis().to_vec())[1..]
            .iter()
            .copied()
            .filter(|&v| !m.contains(v) && m.ground().iter().all(|g| m.contains(v ^ g))),
    );
    assert_eq!(x, direct);
    assert!(verify_thirdpoint(&m, &col.g2, &x).unwrap());
}

#[test]
fn pipeline_rejects_invalid_inputs() {
    let cfg = PipelineConfig::default();
    let triangle = Matroid::from_points(3, [1, 2, 3]).unwrap();
    assert!(chi_bound_pipeline(&triangle, 3, &cfg).is_err());
    let c5 = c5t(4).unwrap();
    assert!(chi_bound_pipeline(&c5, 3, &cfg).is_err());
    assert!(chi_bound_pipeline(&c5, 0, &cfg).is_err());
}
