//! Fixed-coordinate generators: tripods, C₅ and C₅,ₜ, affine geometries,
//! and a point-by-point verifier for the three tripod properties.
//!
//! Coordinates: `e_i` is bit `i - 1`. The tripod `T_k` lives in dimension
//! `3k + 1` with `H = span{e_1..e_{3k-2}}`, `x = e_{3k-1}`, `y = e_{3k}`,
//! `z = e_{3k+1}` and
//! `E_k = E_{k-1} ∪ (x + E_{k-1}) ∪ (y + E_{k-1}) ∪ (z + E_{k-1}) ∪ {x+y+z}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{closure, flat_points, PointSet, Subspace, Vector, MAX_SET_DIM};
use crate::matroid::Matroid;

/// Largest tripod order that fits in a point set.
pub const MAX_TRIPOD_ORDER: usize = (MAX_SET_DIM - 1) / 3;

/// `T_k` together with the flats used to build and analyse it.
#[derive(Clone, Debug)]
pub struct TripodWitness {
    pub matroid: Matroid,
    pub order: usize,
    /// `F_k`, of dimension `2k + 2`; absent for `k = 0`.
    pub f_flat: Option<Subspace>,
    /// The codimension-3 flat `H` carrying `T_{k-1}`; absent for `k = 0`.
    pub h_flat: Option<Subspace>,
    pub xyz: Option<[Vector; 3]>,
}

/// Ground-set size of `T_k`: `(4^{k+1} − 1) / 3`.
pub fn tripod_size(k: usize) -> usize {
    ((1usize << (2 * (k + 1))) - 1) / 3
}

pub fn tripod(k: usize) -> Result<TripodWitness> {
    if k > MAX_TRIPOD_ORDER {
        return Err(Error::DimensionTooLarge {
            op: "tripod",
            n: 3 * k + 1,
            cap: MAX_SET_DIM,
        });
    }
    let mut ground: Vec<Vector> = vec![1];
    let mut f_flat: Option<Subspace> = None;
    let mut h_flat = None;
    let mut xyz = None;
    for j in 1..=k {
        let n = 3 * j + 1;
        let (x, y, z) = (1 << (3 * j - 2), 1 << (3 * j - 1), 1 << (3 * j));
        let prev = ground.clone();
        for shift in [x, y, z] {
            ground.extend(prev.iter().map(|&e| e ^ shift));
        }
        ground.push(x ^ y ^ z);
        f_flat = Some(match f_flat {
            None => Subspace::full(4),
            Some(f) => {
                let mut f = Subspace::span(n, f.basis().iter().copied());
                f.insert(x ^ y);
                f.insert(x ^ z);
                f
            }
        });
        h_flat = Some(Subspace::coordinate(n, 0..3 * j - 2));
        xyz = Some([x, y, z]);
    }
    let n = 3 * k + 1;
    Ok(TripodWitness {
        matroid: Matroid::from_points(n, ground)?,
        order: k,
        f_flat,
        h_flat,
        xyz,
    })
}

/// The five-point circuit `{e_1, e_2, e_3, e_4, e_1+e_2+e_3+e_4}` in an
/// ambient space of dimension `t ≥ 4`.
pub fn c5t(t: usize) -> Result<Matroid> {
    if t < 4 {
        return Err(Error::precondition(format!("C_(5,t) needs t >= 4, got {t}")));
    }
    Matroid::from_points(t, [1, 2, 4, 8, 15])
}

/// AG(n-1, 2): the vectors whose last coordinate is 1.
pub fn affine_geometry(n: usize) -> Result<Matroid> {
    if n == 0 {
        return Err(Error::precondition("affine geometry needs n >= 1"));
    }
    let top: Vector = 1 << (n - 1);
    Matroid::from_points(n, top..top << 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BulletVerdict {
    pub bullet: u8,
    pub statement: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripodLemmaRecord {
    pub order: usize,
    pub dim: usize,
    pub ground_size: usize,
    pub f_flat_dim: usize,
    pub bullets: Vec<BulletVerdict>,
}

/// Largest order checked point by point.
pub const VERIFY_TRIPOD_CAP: usize = 6;

/// `F_k` rebuilt from scratch: the four coordinates of `T_1` plus
/// `x_j + y_j` and `x_j + z_j` for every level `j = 2..k`.
fn rederive_f_flat(k: usize) -> Subspace {
    let n = 3 * k + 1;
    let mut gens: Vec<Vector> = (0..4).map(|i| 1 << i).collect();
    for j in 2..=k {
        let x = 1 << (3 * j - 2);
        gens.push(x | 1 << (3 * j - 1));
        gens.push(x | 1 << (3 * j));
    }
    closure(&PointSet::from_points(n, gens))
}

fn violation(bullet: u8, msg: String) -> Error {
    Error::internal(format!("tripod property {bullet} fails: {msg}"))
}

/// Checks, for `T_k`:
/// 1. the dimension is `3k + 1`;
/// 2. `E_k ∩ F_k` is five points summing to zero and spanning dimension 4,
///    with every other point of `F_k` outside `E_k`, so `T_k | F_k ≅ C_{5,2k+2}`;
/// 3. every point of `F_k` is in `E_k` or a sum of two points of `E_k`.
pub fn verify_tripod_lemma(k: usize) -> Result<TripodLemmaRecord> {
    if k == 0 {
        return Err(Error::precondition("the tripod properties concern k >= 1"));
    }
    if k > VERIFY_TRIPOD_CAP {
        return Err(Error::DimensionTooLarge {
            op: "verify_tripod_lemma",
            n: 3 * k + 1,
            cap: 3 * VERIFY_TRIPOD_CAP + 1,
        });
    }
    let tw = tripod(k)?;
    let m = &tw.matroid;
    let n = m.dim();
    let f = rederive_f_flat(k);
    if tw.f_flat.as_ref() != Some(&f) {
        return Err(Error::internal(format!(
            "constructed F_{k} differs from the re-derived flat"
        )));
    }
    let mut bullets = Vec::with_capacity(3);

    if n != 3 * k + 1 {
        return Err(violation(1, format!("T_{k} has dimension {n}, expected {}", 3 * k + 1)));
    }
    bullets.push(BulletVerdict {
        bullet: 1,
        statement: "T_k has dimension 3k+1",
        passed: true,
        detail: format!("dim = {n}"),
    });

    if f.dim() != 2 * k + 2 {
        return Err(violation(2, format!("F_{k} has dimension {}", f.dim())));
    }
    let f_points = flat_points(&f);
    let inside = f_points.intersection(m.ground());
    let pts = inside.to_vec();
    if pts.len() != 5 {
        let extra = pts.get(5).or(pts.last()).copied().unwrap_or(0);
        return Err(violation(
            2,
            format!("E_k ∩ F_k has {} points (e.g. {extra}), expected 5", pts.len()),
        ));
    }
    let sum = pts.iter().fold(0, |s, &p| s ^ p);
    if sum != 0 {
        return Err(violation(2, format!("the five points {pts:?} sum to {sum}")));
    }
    let span = closure(&inside);
    if span.dim() != 4 {
        return Err(violation(
            2,
            format!("the five points {pts:?} span dimension {}", span.dim()),
        ));
    }
    bullets.push(BulletVerdict {
        bullet: 2,
        statement: "T_k | F_k is C_(5,2k+2) with dim F_k = 2k+2",
        passed: true,
        detail: format!("dim F_k = {}, E ∩ F_k = {pts:?}", f.dim()),
    });

    let ground = m.ground().to_vec();
    let mut reach = m.ground().clone();
    for (i, &a) in ground.iter().enumerate() {
        for &b in &ground[i + 1..] {
            reach.insert(a ^ b);
        }
    }
    if let Some(bad) = f_points.difference(&reach).first() {
        return Err(violation(
            3,
            format!("point {bad} of F_k is neither in E_k nor in E_k + E_k"),
        ));
    }
    bullets.push(BulletVerdict {
        bullet: 3,
        statement: "F_k ⊆ E_k ∪ (E_k + E_k)",
        passed: true,
        detail: format!("all {} points of F_k covered", f_points.len()),
    });

    Ok(TripodLemmaRecord {
        order: k,
        dim: n,
        ground_size: m.len(),
        f_flat_dim: f.dim(),
        bullets,
    })
}
