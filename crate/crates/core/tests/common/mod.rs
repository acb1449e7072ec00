//! Independent oracles shared by the integration tests.
//!
//! Nothing here goes through edge assignments or the torus graph: the
//! oracles work directly with the cubes `u/k + f(u) + [0, 1/k]^n` in exact
//! integer arithmetic (coordinates scaled by a common denominator).

#![allow(dead_code)]

use std::collections::BTreeSet;

use achieve_core::{DiscreteNSet, LatticeVector, SymmetricSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::new(c.to_vec())
}

pub fn set(n: usize, pairs: &[&[i64]]) -> SymmetricSet {
    let vs: Vec<LatticeVector> = pairs.iter().map(|c| lv(c)).collect();
    SymmetricSet::normalize(n, &vs).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cell_coords(n: usize, k: usize, mut idx: usize) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for x in c.iter_mut().rev() {
        *x = (idx % k) as i64;
        idx /= k;
    }
    c
}

/// Lower corners of the cubes, in units of `1/k`.
pub fn corners(set: &DiscreteNSet) -> Vec<Vec<i64>> {
    let (n, k) = (set.n(), set.k());
    (0..set.cell_count())
        .map(|i| {
            let u = cell_coords(n, k, i);
            let f = set.shift(i);
            u.iter().zip(f.coords()).map(|(&u, &f)| u + k as i64 * f).collect()
        })
        .collect()
}

/// `(K - K) ∩ Z^n` from the cube geometry: two cubes with lower corners
/// `p, q` (units of `1/k`) differ by the integer `g` at some pair of points
/// iff `|k g - (q - p)|_∞ ≤ 1`.
pub fn geometric_achieved_set(set: &DiscreteNSet) -> SymmetricSet {
    let (n, k) = (set.n(), set.k() as i64);
    let cs = corners(set);
    let mut out = Vec::new();
    for p in &cs {
        for q in &cs {
            // candidates per coordinate: k g in [d - 1, d + 1]
            let ranges: Vec<Vec<i64>> = p
                .iter()
                .zip(q)
                .map(|(&a, &b)| {
                    let d = b - a;
                    ((d - 1).div_euclid(k) - 1..=(d + 1).div_euclid(k) + 1)
                        .filter(|g| (k * g - d).abs() <= 1)
                        .collect()
                })
                .collect();
            let mut stack = vec![Vec::new()];
            for r in &ranges {
                stack = stack
                    .into_iter()
                    .flat_map(|prefix: Vec<i64>| {
                        r.iter().map(move |&g| {
                            let mut next = prefix.clone();
                            next.push(g);
                            next
                        })
                    })
                    .collect();
            }
            out.extend(stack.into_iter().map(LatticeVector::new));
        }
    }
    SymmetricSet::normalize(n, &out).unwrap()
}

/// `S(p) = {g : p + g ∈ K}` for `p = point / den`, by direct cube
/// membership. `den` must be a multiple of `k`.
pub fn point_class(set: &DiscreteNSet, point: &[i64], den: i64) -> Vec<LatticeVector> {
    let k = set.k() as i64;
    let scale = den / k;
    let mut out = BTreeSet::new();
    for c in corners(set) {
        // cube [c/k, (c+1)/k] in units of 1/den is [c*scale, (c+1)*scale]
        let mut g = Vec::new();
        let mut ok = true;
        for (&ci, &pi) in c.iter().zip(point) {
            let (lo, hi) = (ci * scale, (ci + 1) * scale);
            // need lo <= pi + g*den <= hi for some integer g
            let gmin = (lo - pi).div_euclid(den) + i64::from((lo - pi).rem_euclid(den) != 0);
            if pi + gmin * den > hi {
                ok = false;
                break;
            }
            // the cube is shorter than 1, so gmin is the only candidate
            g.push(gmin);
        }
        if ok {
            out.insert(LatticeVector::new(g));
        }
    }
    out.into_iter().collect()
}

pub fn canonical(members: &[LatticeVector]) -> Vec<LatticeVector> {
    let first = members.iter().min().cloned().unwrap();
    let mut out: Vec<LatticeVector> = members.iter().map(|m| m - &first).collect();
    out.sort();
    out
}

/// Translation classes of all `S(p)` and their nonempty subsets, with `p`
/// ranging over the grid `(1/den) Z^n ∩ [0, 1)^n`.
pub fn sampled_ideal(set: &DiscreteNSet, den: i64) -> BTreeSet<Vec<LatticeVector>> {
    let n = set.n();
    let mut classes = BTreeSet::new();
    let total = (den as usize).pow(n as u32);
    for idx in 0..total {
        let point = cell_coords(n, den as usize, idx);
        let s = point_class(set, &point, den);
        for mask in 1u32..1 << s.len() {
            let sub: Vec<LatticeVector> =
                s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
            classes.insert(canonical(&sub));
        }
    }
    classes
}

pub fn random_nset(rng: &mut ChaCha8Rng, n: usize, k: usize, bound: i64) -> DiscreteNSet {
    let shifts = (0..k.pow(n as u32))
        .map(|_| LatticeVector::new((0..n).map(|_| rng.random_range(-bound..=bound)).collect()))
        .collect();
    DiscreteNSet::new(n, k, shifts).unwrap()
}

/// Every translate map of `G_{1,k}` with `f(0) = 0` and `|f| ≤ bound`.
pub fn all_one_dim_maps(k: usize, bound: i64) -> Vec<DiscreteNSet> {
    let side = (2 * bound + 1) as usize;
    let count = side.pow(k as u32 - 1);
    (0..count)
        .map(|mut idx| {
            let mut shifts = vec![lv(&[0])];
            for _ in 1..k {
                shifts.push(lv(&[(idx % side) as i64 - bound]));
                idx /= side;
            }
            DiscreteNSet::new(1, k, shifts).unwrap()
        })
        .collect()
}

/// Every symmetric `A ⊆ {-r..r}` with `0 ∈ A` and at least one pair.
pub fn all_one_dim_sets(r: i64) -> Vec<SymmetricSet> {
    (1u32..1 << r)
        .map(|mask| {
            let vs: Vec<LatticeVector> = (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| lv(&[i])).collect();
            SymmetricSet::normalize(1, &vs).unwrap()
        })
        .collect()
}

/// Four fixed unimodular maps plus a reflection.
pub fn fixed_unimodular() -> Vec<achieve_core::Matrix2> {
    use achieve_core::Matrix2;
    vec![
        Matrix2::new([[1, 1], [0, 1]]),
        Matrix2::new([[2, 1], [1, 1]]),
        Matrix2::new([[0, -1], [1, 0]]),
        Matrix2::new([[1, 0], [-3, 1]]),
        Matrix2::new([[0, 1], [1, 0]]),
    ]
}
