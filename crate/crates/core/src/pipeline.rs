//! The critical-number descent for triangle-free, I_{1,t}-free matroids.
//!
//! One step of the descent on `M = (E, G)`:
//!
//! 1. find the largest `k` such that `M` has a `T_k`-restriction, with image
//!    flat `G₁` of dimension `3k + 1`;
//! 2. fix a complement `G₂` of `G₁` and colour each point `v ∈ G₂` by
//!    `(e, S)` where `e = [v ∈ E]` and `S = {g ∈ G₁ \ {0} : v + g ∈ E}`;
//! 3. let `X` be the points of `G₂` outside `E` whose colour has
//!    `G₁ ∩ E ⊆ S`. Maximality of `k` forces `(X + X + X) ∩ E = ∅`;
//! 4. look for a large flat inside `X + X + X`. A linear one is disjoint
//!    from `E` outright. An affine one `A` with closure `F′` and direction
//!    `F″` leaves `F′ \ F″ = A` disjoint from `E`, so `M | F″` is
//!    I_{1,t-1}-free and the descent recurses there.
//!
//! Every witness flat is re-checked against `E` before it is returned.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::constructions::{tripod, MAX_TRIPOD_ORDER};
use crate::error::{Error, Result};
use crate::fourier::{triple_counts, TRIPLE_COUNT_CAP};
use crate::gf2::{
    complement_flat, flat_points, largest_affine_in, largest_subspace_in, AffineFlat, PointSet,
    SearchBudget, Subspace, Vector,
};
use crate::matroid::{
    find_embedding, is_i1t_free, is_triangle_free, verify_embedding, Embedding, EmbeddingKind,
    Matroid,
};
use crate::rational::Rational;
use crate::regularity::{default_max_codim, key_lemma_witness};

/// Why the tripod order search stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripodStop {
    /// `T_{k+1}` provably has no restriction embedding.
    NoEmbedding,
    /// `T_{k+1}` does not fit in the ambient dimension.
    DimensionLimit,
    /// `k` reached the configured cap.
    OrderCap,
    /// The search for `T_{k+1}` ran out of nodes.
    Budget,
}

impl TripodStop {
    /// True when `k` is known to be maximal.
    pub fn certified(self) -> bool {
        matches!(self, TripodStop::NoEmbedding | TripodStop::DimensionLimit)
    }
}

#[derive(Clone, Debug)]
pub struct TripodOrder {
    pub k: usize,
    /// Restriction embedding of `T_k` into `M`.
    pub embedding: Embedding,
    /// `G₁`, the image of the embedding.
    pub g1: Subspace,
    pub stop: TripodStop,
}

impl TripodOrder {
    pub fn certified(&self) -> bool {
        self.stop.certified()
    }
}

/// Largest `k ≤ k_cap` such that `T_k` has a restriction embedding into `m`.
pub fn max_tripod_order(m: &Matroid, k_cap: usize, budget: SearchBudget) -> Result<TripodOrder> {
    let first = m
        .ground()
        .first()
        .ok_or_else(|| Error::precondition("the ground set is empty, so there is no T_0"))?;
    let mut best = TripodOrder {
        k: 0,
        embedding: Embedding { images: vec![first] },
        g1: Subspace::span(m.dim(), [first]),
        stop: TripodStop::OrderCap,
    };
    let cap = k_cap.min(MAX_TRIPOD_ORDER);
    loop {
        let next = best.k + 1;
        if 3 * next + 1 > m.dim() {
            best.stop = TripodStop::DimensionLimit;
            return Ok(best);
        }
        if next > cap {
            best.stop = TripodStop::OrderCap;
            return Ok(best);
        }
        let pattern = tripod(next)?.matroid;
        match find_embedding(m, &pattern, EmbeddingKind::Restriction, budget) {
            Ok(Some(embedding)) => {
                best = TripodOrder {
                    k: next,
                    g1: embedding.image(m.dim()),
                    embedding,
                    stop: TripodStop::OrderCap,
                };
            }
            Ok(None) => {
                best.stop = TripodStop::NoEmbedding;
                return Ok(best);
            }
            Err(Error::BudgetExceeded { .. }) => {
                best.stop = TripodStop::Budget;
                return Ok(best);
            }
            Err(e) => return Err(e),
        }
    }
}

/// The colour `(e, S)` of a point of `G₂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColorKey {
    pub e: bool,
    /// Points `g` of `G₁` with `v + g ∈ E`, ascending.
    pub s: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct G2Coloring {
    pub g1: Subspace,
    pub g2: Subspace,
    /// `(v, key)` for every point `v` of `G₂`, ascending in `v`.
    pub keys: Vec<(Vector, ColorKey)>,
}

impl G2Coloring {
    pub fn distinct_keys(&self) -> usize {
        self.keys.iter().map(|(_, k)| k).collect::<BTreeSet<_>>().len()
    }

    /// `2^{dim G₁ + 1}`, i.e. `2^{3k+2}` for a tripod flat of order `k`.
    /// This is the commonly quoted count, but it is not a bound: `S` ranges
    /// over subsets of `G₁`, not over its dimension, and dense
    /// triangle-free matroids with `k = 1` already exceed it. See
    /// [`G2Coloring::key_bound_log2`].
    pub fn stated_key_bound(&self) -> u128 {
        1u128 << (self.g1.dim() + 1).min(127)
    }

    /// `log₂` of a valid bound on the number of keys: `e` is one bit and
    /// `S` is a subset of the `2^{dim G₁} − 1` points of `G₁`.
    pub fn key_bound_log2(&self) -> usize {
        1 << self.g1.dim()
    }
}

/// Colours every point of the canonical complement `G₂` of `g1`.
pub fn g2_coloring(m: &Matroid, g1: &Subspace) -> G2Coloring {
    let g2 = complement_flat(g1);
    let g1_points: Vec<Vector> = g1.elements_sorted().into_iter().skip(1).collect();
    let keys = g2
        .elements_sorted()
        .into_iter()
        .skip(1)
        .map(|v| {
            let key = ColorKey {
                e: m.contains(v),
                s: g1_points.iter().copied().filter(|&g| m.contains(v ^ g)).collect(),
            };
            (v, key)
        })
        .collect();
    G2Coloring {
        g1: g1.clone(),
        g2,
        keys,
    }
}

/// Points of `G₂` with `e = 0` and `G₁ ∩ E ⊆ S`, in ambient coordinates.
pub fn extract_x(coloring: &G2Coloring, m: &Matroid) -> PointSet {
    let g1_in_e: Vec<Vector> = flat_points(&coloring.g1)
        .intersection(m.ground())
        .to_vec();
    PointSet::from_points(
        m.dim(),
        coloring
            .keys
            .iter()
            .filter(|(_, key)| !key.e && g1_in_e.iter().all(|g| key.s.binary_search(g).is_ok()))
            .map(|&(v, _)| v),
    )
}

/// `X` rewritten in the internal coordinates of `g2`.
pub fn x_in_g2(x: &PointSet, g2: &Subspace) -> PointSet {
    PointSet::from_points(
        g2.dim(),
        x.iter()
            .map(|v| g2.coords(v).expect("X lies in G2")),
    )
}

/// `(X + X + X) ∩ E = ∅`, for `x ⊆ g2` in ambient coordinates.
pub fn verify_thirdpoint(m: &Matroid, g2: &Subspace, x: &PointSet) -> Result<bool> {
    Ok(thirdpoint_violation(m, g2, x)?.is_none())
}

/// Three points of `X` whose sum lies in `E`, if any.
pub fn thirdpoint_violation(
    m: &Matroid,
    g2: &Subspace,
    x: &PointSet,
) -> Result<Option<[Vector; 3]>> {
    crate::error::check_dim("thirdpoint check", g2.dim(), TRIPLE_COUNT_CAP)?;
    let support = triple_counts(&x_in_g2(x, g2))?.support();
    let Some(u) = support.iter().map(|w| g2.embed(w)).find(|&u| m.contains(u)) else {
        return Ok(None);
    };
    let pts = x.to_vec();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i..] {
            if x.contains(a ^ b ^ u) {
                return Ok(Some([a, b, a ^ b ^ u]));
            }
        }
    }
    Err(Error::internal(format!(
        "triple-count support contains {u} but no triple of X sums to it"
    )))
}

/// Extends a `T_k` embedding by `x, y, z ↦ v₁, v₂, v₃` to a `T_{k+1}`
/// embedding, as in the tripod recursion.
fn upgrade_tripod(m: &Matroid, order: &TripodOrder, triple: [Vector; 3]) -> Result<TripodOrder> {
    let k = order.k + 1;
    let pattern = tripod(k)?.matroid;
    let mut images = order.embedding.images.clone();
    images.extend(triple);
    let embedding = Embedding { images };
    if !verify_embedding(m, &pattern, &embedding, EmbeddingKind::Restriction) {
        return Err(Error::internal(format!(
            "points {triple:?} with sum in E do not extend T_{} to T_{k}",
            order.k
        )));
    }
    Ok(TripodOrder {
        k,
        g1: embedding.image(m.dim()),
        embedding,
        stop: order.stop,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Largest linear and affine flats in the sumset by exhaustive search.
    ExhaustiveSearch,
    /// The regular-subspace witness, falling back to exhaustive search when
    /// it fails.
    Regularity,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub budget: SearchBudget,
    pub strategy: Strategy,
    pub k_cap: usize,
    /// A user-supplied value of `GR(c, t)`, shown as a density floor only.
    pub gr_value: Option<u64>,
    pub max_codim: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            budget: SearchBudget::default(),
            strategy: Strategy::ExhaustiveSearch,
            k_cap: MAX_TRIPOD_ORDER,
            gr_value: None,
            max_codim: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DescentCase {
    /// `E = ∅`; the whole space is the witness.
    EmptyGround,
    /// An affine flat in the sumset; the descent recurses on its direction.
    Affine,
    /// A linear flat in the sumset, disjoint from `E`.
    Linear,
    /// Nothing usable in the sumset; the zero flat is the witness.
    Degenerate,
}

/// One level of the descent.
#[derive(Clone, Debug, Serialize)]
pub struct DescentStep {
    pub depth: usize,
    pub t: usize,
    pub dim: usize,
    pub ground_size: usize,
    pub tripod_order: Option<usize>,
    pub tripod_stop: Option<TripodStop>,
    /// Tripod upgrades triggered by a sum of three points of `X` in `E`.
    pub tripod_upgrades: usize,
    pub g1_dim: Option<usize>,
    pub g2_dim: Option<usize>,
    pub color_keys: Option<usize>,
    /// The quoted `2^{3k+2}`, which may be exceeded.
    pub color_key_bound: Option<String>,
    /// `log₂` of the valid bound `2^{2^{dim G₁}}`.
    pub color_key_bound_log2: Option<usize>,
    pub x_size: Option<usize>,
    pub sumset_size: Option<usize>,
    /// `dim N − GR(c, t)`, shown only when a GR value is supplied.
    pub density_floor_log2: Option<i64>,
    pub strategy_used: Option<String>,
    pub case: DescentCase,
    /// Dimension of the sumset flat (linear) or of its direction (affine).
    pub sumset_flat_dim: Option<usize>,
    pub flat_dim: usize,
    pub codim: usize,
}

/// A flat disjoint from `E`, so `χ(M) ≤ n − dim(flat)`.
#[derive(Clone, Debug, Serialize)]
pub struct ChiWitness {
    pub flat: Subspace,
    pub chi_bound: usize,
    pub trace: Vec<DescentStep>,
}

impl ChiWitness {
    /// Fails unless `flat` avoids `E`.
    pub fn new(m: &Matroid, flat: Subspace, trace: Vec<DescentStep>) -> Result<Self> {
        if flat.ambient_dim() != m.dim() {
            return Err(Error::internal("witness flat lives in the wrong dimension"));
        }
        if let Some(bad) = flat_points(&flat).intersection(m.ground()).first() {
            return Err(Error::internal(format!("witness flat contains ground point {bad}")));
        }
        Ok(ChiWitness {
            chi_bound: m.dim() - flat.dim(),
            flat,
            trace,
        })
    }
}

/// Runs the descent on a triangle-free, I_{1,t}-free matroid.
pub fn chi_bound_pipeline(m: &Matroid, t: usize, config: &PipelineConfig) -> Result<ChiWitness> {
    if t == 0 {
        return Err(Error::precondition("t must be at least 1"));
    }
    if !is_triangle_free(m) {
        return Err(Error::precondition("the matroid is not triangle-free"));
    }
    if t <= m.dim() && !is_i1t_free(m, t, config.budget)? {
        return Err(Error::precondition(format!("the matroid is not I_(1,{t})-free")));
    }
    descend(m, t, 0, config)
}

fn leaf_step(m: &Matroid, t: usize, depth: usize, case: DescentCase, flat_dim: usize) -> DescentStep {
    DescentStep {
        depth,
        t,
        dim: m.dim(),
        ground_size: m.len(),
        tripod_order: None,
        tripod_stop: None,
        tripod_upgrades: 0,
        g1_dim: None,
        g2_dim: None,
        color_keys: None,
        color_key_bound: None,
        color_key_bound_log2: None,
        x_size: None,
        sumset_size: None,
        density_floor_log2: None,
        strategy_used: None,
        case,
        sumset_flat_dim: None,
        flat_dim,
        codim: m.dim() - flat_dim,
    }
}

/// Candidate flats inside the sumset, in `G₂` coordinates.
struct SumsetFlats {
    linear: Option<Subspace>,
    affine: Option<AffineFlat>,
    strategy_used: &'static str,
}

fn sumset_flats(
    x_n: &PointSet,
    support: &PointSet,
    config: &PipelineConfig,
) -> Result<SumsetFlats> {
    if config.strategy == Strategy::Regularity && !x_n.is_empty() {
        let d = x_n.dim();
        let alpha = Rational::new(x_n.len() as i64, 1i64 << d);
        let max_codim = config.max_codim.unwrap_or_else(|| default_max_codim(d));
        match key_lemma_witness(x_n, alpha, max_codim) {
            Ok(w) if w.verified => {
                return Ok(if w.is_linear() {
                    SumsetFlats {
                        linear: Some(w.flat.space().clone()),
                        affine: None,
                        strategy_used: "regularity",
                    }
                } else {
                    SumsetFlats {
                        linear: None,
                        affine: Some(w.flat),
                        strategy_used: "regularity",
                    }
                });
            }
            Ok(_) | Err(Error::CodimBudgetExceeded { .. }) | Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
        let mut flats = exhaustive_flats(support, config.budget)?;
        flats.strategy_used = "exhaustive-fallback";
        return Ok(flats);
    }
    exhaustive_flats(support, config.budget)
}

fn exhaustive_flats(support: &PointSet, budget: SearchBudget) -> Result<SumsetFlats> {
    let linear = largest_subspace_in(support, budget)?;
    let affine = largest_affine_in(support, budget)?.filter(|a| !a.is_linear());
    Ok(SumsetFlats {
        linear,
        affine,
        strategy_used: "exhaustive",
    })
}

fn descend(m: &Matroid, t: usize, depth: usize, config: &PipelineConfig) -> Result<ChiWitness> {
    let n = m.dim();
    if m.is_empty() {
        let step = leaf_step(m, t, depth, DescentCase::EmptyGround, n);
        return ChiWitness::new(m, Subspace::full(n), vec![step]);
    }
    if t == 1 {
        return Err(Error::internal("nonempty ground set reached the t = 1 base case"));
    }

    let mut order = max_tripod_order(m, config.k_cap, config.budget)?;
    let mut upgrades = 0;
    let (coloring, x) = loop {
        let coloring = g2_coloring(m, &order.g1);
        let x = extract_x(&coloring, m);
        match thirdpoint_violation(m, &coloring.g2, &x)? {
            None => break (coloring, x),
            Some(triple) if !order.certified() => {
                order = upgrade_tripod(m, &order, triple)?;
                upgrades += 1;
            }
            Some(triple) => {
                return Err(Error::internal(format!(
                    "T_{} is certified maximal but {triple:?} in X sum into E",
                    order.k
                )))
            }
        }
    };
    let g2 = &coloring.g2;
    let x_n = x_in_g2(&x, g2);
    let support = triple_counts(&x_n)?.support();
    let flats = sumset_flats(&x_n, &support, config)?;

    let mut step = DescentStep {
        depth,
        t,
        dim: n,
        ground_size: m.len(),
        tripod_order: Some(order.k),
        tripod_stop: Some(order.stop),
        tripod_upgrades: upgrades,
        g1_dim: Some(order.g1.dim()),
        g2_dim: Some(g2.dim()),
        color_keys: Some(coloring.distinct_keys()),
        color_key_bound: Some(coloring.stated_key_bound().to_string()),
        color_key_bound_log2: Some(coloring.key_bound_log2()),
        x_size: Some(x.len()),
        sumset_size: Some(support.len()),
        density_floor_log2: config.gr_value.map(|gr| g2.dim() as i64 - gr as i64),
        strategy_used: Some(flats.strategy_used.to_string()),
        case: DescentCase::Degenerate,
        sumset_flat_dim: None,
        flat_dim: 0,
        codim: n,
    };

    // Linear case: the lifted flat avoids E outright.
    let mut best: Option<(Subspace, Vec<DescentStep>, DescentCase, usize)> =
        flats.linear.as_ref().map(|l| {
            (g2.lift(l), Vec::new(), DescentCase::Linear, l.dim())
        });

    // Affine case: recurse on the direction of the affine flat.
    if let Some(a) = &flats.affine {
        let beats_linear = best.as_ref().is_none_or(|(f, ..)| a.dim() > f.dim());
        if beats_linear {
            let f2 = g2.lift(a.space());
            let sub = m.restrict(&f2);
            if t - 1 <= sub.dim() && !is_i1t_free(&sub, t - 1, config.budget)? {
                return Err(Error::internal(format!(
                    "restriction to the direction of an affine sumset flat is not I_(1,{})-free",
                    t - 1
                )));
            }
            let inner = descend(&sub, t - 1, depth + 1, config)?;
            let lifted = f2.lift(&inner.flat);
            if best.as_ref().is_none_or(|(f, ..)| lifted.dim() > f.dim()) {
                best = Some((lifted, inner.trace, DescentCase::Affine, a.dim()));
            }
        }
    }

    let (flat, sub_trace) = match best {
        Some((flat, sub_trace, case, sdim)) => {
            step.case = case;
            step.sumset_flat_dim = Some(sdim);
            (flat, sub_trace)
        }
        None => (Subspace::zero(n), Vec::new()),
    };
    step.flat_dim = flat.dim();
    step.codim = n - flat.dim();
    let mut trace = vec![step];
    trace.extend(sub_trace);
    ChiWitness::new(m, flat, trace)
}
