//! The achieved ideal of a discrete N-set.
//!
//! For a point `p`, `S(p) = {g ∈ Z^n : p + g ∈ K}`. Finite subsets of `Z^n`
//! are compared up to translation, `S ≤ T` when some translate of `S` lies in
//! `T`. The achieved ideal is the downward closure of all `S(p)` under this
//! order.
//!
//! `K` is a union of cubes of the `1/k` grid, so `S(p)` only depends on the
//! open grid face containing `p`. One midpoint per face of the fundamental
//! domain is sampled; coordinates are exact integers in units of `1/(2k)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::nset::DiscreteNSet;

/// Work cap (`strata × cells`) above which the enumeration is refused.
pub const IDEAL_BUDGET: u64 = 50_000_000;

/// One translation class of finite subsets of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealClass {
    /// Sorted members, translated so that the first one is the origin.
    pub members: Vec<LatticeVector>,
    /// `|S| - 1`.
    pub rank: usize,
    /// Realized as `S(p)` for some point, not only as a subset of one.
    pub realized: bool,
}

/// The downward-closed poset of classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AchievedIdeal {
    pub n: usize,
    /// In lexicographic order of their canonical member lists.
    pub classes: Vec<IdealClass>,
    /// Strict order: `(i, j)` when class `i` is a proper translated subset of
    /// class `j`.
    pub order: Vec<(usize, usize)>,
}

/// Translates a nonempty set so its lexicographically least member is 0.
pub fn canonical_class(members: impl IntoIterator<Item = LatticeVector>) -> Vec<LatticeVector> {
    let sorted: BTreeSet<LatticeVector> = members.into_iter().collect();
    let Some(first) = sorted.first().cloned() else {
        return Vec::new();
    };
    sorted.iter().map(|m| m - &first).collect()
}

/// Whether some translate of `small` is contained in `big`.
pub fn translated_subset(small: &[LatticeVector], big: &[LatticeVector]) -> bool {
    let Some(anchor) = small.first() else { return true };
    if small.len() > big.len() {
        return false;
    }
    big.iter().any(|b| {
        let t = b - anchor;
        small.iter().all(|s| big.binary_search(&(s + &t)).is_ok())
    })
}

impl AchievedIdeal {
    pub fn max_rank(&self) -> usize {
        self.classes.iter().map(|c| c.rank).max().unwrap_or(0)
    }

    /// Classes with no strictly larger class.
    pub fn maximal(&self) -> Vec<&IdealClass> {
        let below: BTreeSet<usize> = self.order.iter().map(|&(i, _)| i).collect();
        self.classes
            .iter()
            .enumerate()
            .filter(|(i, _)| !below.contains(i))
            .map(|(_, c)| c)
            .collect()
    }

    pub fn contains(&self, members: &[LatticeVector]) -> bool {
        let canon = canonical_class(members.iter().cloned());
        self.classes.iter().any(|c| c.members == canon)
    }
}

/// `S(p)` for the point `p = point / (2k)`.
fn sample(set: &DiscreteNSet, point: &[i64]) -> Vec<LatticeVector> {
    let n = set.n();
    let two_k = 2 * set.k() as i64;
    let mut out = Vec::new();
    'cells: for cell in 0..set.cell_count() {
        let u = set.cell_coords(cell);
        let shift = set.shift(cell);
        let mut g = Vec::with_capacity(n);
        for i in 0..n {
            // need 2k (g - f(u)) in [2u - P, 2u - P + 2]
            let lo = 2 * u[i] as i64 - point[i];
            let t = lo.div_euclid(two_k) + i64::from(lo.rem_euclid(two_k) != 0);
            if t * two_k > lo + 2 {
                continue 'cells;
            }
            g.push(t + shift.coords()[i]);
        }
        out.push(LatticeVector::new(g));
    }
    out
}

fn subsets(members: &[LatticeVector]) -> impl Iterator<Item = Vec<LatticeVector>> + '_ {
    (1u32..1 << members.len()).map(move |mask| {
        members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, m)| m.clone())
            .collect()
    })
}

pub fn achieved_ideal(set: &DiscreteNSet) -> Result<AchievedIdeal> {
    let n = set.n();
    let two_k = 2 * set.k();
    let strata = (two_k as u64).pow(n as u32);
    if n >= 3 && strata.saturating_mul(set.cell_count() as u64) > IDEAL_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "achieved ideal for n = {n}, k = {} needs {strata} strata",
            set.k()
        )));
    }
    let mut realized = BTreeSet::new();
    let mut point = vec![0i64; n];
    loop {
        let s = sample(set, &point);
        realized.insert(canonical_class(s));
        let mut i = 0;
        while i < n && point[i] == two_k as i64 - 1 {
            point[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        point[i] += 1;
    }

    let mut all: BTreeMap<Vec<LatticeVector>, bool> = BTreeMap::new();
    for s in &realized {
        for sub in subsets(s) {
            all.entry(canonical_class(sub)).or_insert(false);
        }
    }
    for s in &realized {
        all.insert(s.clone(), true);
    }
    let classes: Vec<IdealClass> = all
        .into_iter()
        .map(|(members, realized)| IdealClass {
            rank: members.len() - 1,
            members,
            realized,
        })
        .collect();
    let mut order = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            if i != j && a.members.len() < b.members.len() && translated_subset(&a.members, &b.members) {
                order.push((i, j));
            }
        }
    }
    Ok(AchievedIdeal { n, classes, order })
}

impl DiscreteNSet {
    pub fn achieved_ideal(&self) -> Result<AchievedIdeal> {
        achieved_ideal(self)
    }
}
