//! Exactly `k`-discrete N-sets.
//!
//! A set of this kind is a union of `k^n` closed cubes of side `1/k`, one in
//! every residue class of the `1/k` grid modulo `Z^n`. Since every lattice
//! orbit must be covered and there are exactly `k^n` cubes, no residue class
//! can hold two cubes, so the set is fully described by the lattice translate
//! `f(u)` of the cube sitting over each cell `u ∈ (Z/k)^n`:
//!
//! ```text
//! K = ⋃_u  u/k + f(u) + [0, 1/k]^n
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::WitnessFile;
use crate::lattice::{LatticeVector, SymmetricSet, MAX_DIM};
use crate::torus::{EdgeAssignment, TorusGraph};

/// Largest resolution accepted for a given dimension.
pub fn resolution_cap(n: usize) -> usize {
    match n {
        1 => 1024,
        2 => 32,
        3 => 12,
        _ => 6,
    }
}

/// An exactly `k`-discrete N-set, stored as its translate map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WitnessFile", into = "WitnessFile")]
pub struct DiscreteNSet {
    n: usize,
    k: usize,
    /// `shifts[u]` for cells in lexicographic index order.
    shifts: Vec<LatticeVector>,
}

impl DiscreteNSet {
    pub fn new(n: usize, k: usize, shifts: Vec<LatticeVector>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        if k < 3 {
            return Err(Error::InvalidResolution(k));
        }
        if k > resolution_cap(n) {
            return Err(Error::ResolutionCap {
                n,
                k,
                cap: resolution_cap(n),
            });
        }
        let cells = k.pow(n as u32);
        if shifts.len() != cells {
            return Err(Error::InvalidWitness(format!("expected {cells} cells, got {}", shifts.len())));
        }
        if let Some(bad) = shifts.iter().find(|s| s.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        Ok(Self { n, k, shifts })
    }

    /// The unit-cube tiling `f ≡ 0`.
    pub fn zero(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, vec![LatticeVector::zero(n); k.pow(n as u32)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cell_count(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[LatticeVector] {
        &self.shifts
    }

    pub fn shift(&self, cell: usize) -> LatticeVector {
        self.shifts[cell].clone()
    }

    pub fn graph(&self) -> TorusGraph {
        TorusGraph::new(self.n, self.k).expect("validated at construction")
    }

    /// Cell coordinates of the cell with index `cell`.
    pub fn cell_coords(&self, mut cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for c in out.iter_mut().rev() {
            *c = cell % self.k;
            cell /= self.k;
        }
        out
    }

    pub fn cell_index(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.n || coords.iter().any(|&c| c >= self.k) {
            return Err(Error::InvalidCell(coords.to_vec()));
        }
        Ok(coords.iter().fold(0, |acc, &c| acc * self.k + c))
    }

    /// `A(K) = (K - K) ∩ Z^n`: the origin together with `±(f(u) - f(v') + w)`
    /// over every edge `(u, d)` of the torus grid.
    pub fn achieved_set(&self) -> SymmetricSet {
        let graph = self.graph();
        let mut values = Vec::with_capacity(graph.edge_count());
        for u in 0..graph.vertex_count() {
            for j in 0..graph.directions().len() {
                let step = graph.positive_step(u, j);
                values.push(&(&self.shifts[u] - &self.shifts[step.to]) + &step.wrap);
            }
        }
        SymmetricSet::normalize(self.n, &values).expect("dimension checked")
    }

    /// The assignment `value(u, d) = f(u) - f(v') + w`; always proper.
    pub fn differentiate(&self) -> EdgeAssignment {
        EdgeAssignment::differentiate(self)
    }

    /// The same point set at resolution `factor · k`.
    pub fn refine(&self, factor: usize) -> Result<Self> {
        if factor < 2 {
            return Err(Error::InvalidFactor(factor));
        }
        let k = self.k.checked_mul(factor).ok_or(Error::ResolutionCap {
            n: self.n,
            k: usize::MAX,
            cap: resolution_cap(self.n),
        })?;
        if k > resolution_cap(self.n) {
            return Err(Error::ResolutionCap {
                n: self.n,
                k,
                cap: resolution_cap(self.n),
            });
        }
        let cells = k.pow(self.n as u32);
        let shifts = (0..cells)
            .map(|idx| {
                let mut rest = idx;
                let mut coarse = 0;
                let mut place = 1;
                for _ in 0..self.n {
                    coarse += ((rest % k) / factor) * place;
                    place *= self.k;
                    rest /= k;
                }
                self.shifts[coarse].clone()
            })
            .collect();
        Self::new(self.n, k, shifts)
    }

    /// Moves the cube over `cell` by the lattice vector `x`.
    pub fn translate_cell(&self, cell: &[usize], x: &LatticeVector) -> Result<Self> {
        let idx = self.cell_index(cell)?;
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        let mut out = self.clone();
        out.shifts[idx] = &out.shifts[idx] + x;
        Ok(out)
    }

    /// Refines by 3 and moves the central sub-cube of cell 0 by `x`. The
    /// achieved set gains exactly `±x`.
    pub fn augment(&self, x: &LatticeVector) -> Result<Self> {
        let fine = self.refine(3)?;
        fine.translate_cell(&vec![1; self.n], x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn set1(vals: &[i64]) -> SymmetricSet {
        let v: Vec<_> = vals.iter().map(|&x| lv(&[x])).collect();
        SymmetricSet::normalize(1, &v).unwrap()
    }

    /// `(K - K) ∩ Z^n` by intersecting every pair of closed cubes: `g` is a
    /// difference iff `|k g - (v - u) - k (f(v) - f(u))|_∞ ≤ 1`, in units of
    /// `1/k`.
    fn geometric_achieved(set: &DiscreteNSet) -> BTreeSet<LatticeVector> {
        let (n, k) = (set.n(), set.k() as i64);
        let reach = set.shifts().iter().map(LatticeVector::sup_norm).max().unwrap() * 2 + 2;
        let mut out = BTreeSet::new();
        for u in 0..set.cell_count() {
            for v in 0..set.cell_count() {
                let (uc, vc) = (set.cell_coords(u), set.cell_coords(v));
                let mut g = vec![-reach; n];
                loop {
                    let hit = (0..n).all(|i| {
                        let t = k * (g[i] - set.shift(v).coords()[i] + set.shift(u).coords()[i])
                            - (vc[i] as i64 - uc[i] as i64);
                        t.abs() <= 1
                    });
                    if hit {
                        out.insert(LatticeVector::new(g.clone()));
                    }
                    let mut i = 0;
                    while i < n && g[i] == reach {
                        g[i] = -reach;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                    g[i] += 1;
                }
            }
        }
        out
    }

    #[test]
    fn achieved_examples() {
        let k = DiscreteNSet::zero(2, 3).unwrap();
        assert_eq!(k.achieved_set(), SymmetricSet::unit_cube(2));
        assert_eq!(k.achieved_set().len(), 9);
        let k = DiscreteNSet::new(1, 3, vec![lv(&[0]), lv(&[0]), lv(&[1])]).unwrap();
        assert_eq!(k.achieved_set(), set1(&[1, 2]));
        assert_eq!(geometric_achieved(&k), *set1(&[1, 2]).members());
        let k = DiscreteNSet::new(1, 3, vec![lv(&[0]), lv(&[1]), lv(&[2])]).unwrap();
        assert_eq!(k.achieved_set(), set1(&[1, 3]));
        assert_eq!(geometric_achieved(&k), *set1(&[1, 3]).members());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(DiscreteNSet::zero(1, 2).unwrap_err(), Error::InvalidResolution(2));
        assert!(matches!(DiscreteNSet::zero(2, 33), Err(Error::ResolutionCap { cap: 32, .. })));
        assert!(matches!(
            DiscreteNSet::new(1, 3, vec![lv(&[0])]),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn refine_examples() {
        let k = DiscreteNSet::zero(2, 3).unwrap();
        let r = k.refine(2).unwrap();
        assert_eq!(r, DiscreteNSet::zero(2, 6).unwrap());
        assert_eq!(r.achieved_set(), k.achieved_set());
        let k = DiscreteNSet::new(1, 3, vec![lv(&[0]), lv(&[0]), lv(&[1])]).unwrap();
        let r = k.refine(3).unwrap();
        assert_eq!(r.k(), 9);
        assert_eq!(r.achieved_set(), set1(&[1, 2]));
        assert_eq!(k.refine(1).unwrap_err(), Error::InvalidFactor(1));
        assert!(matches!(DiscreteNSet::zero(2, 12).unwrap().refine(3), Err(Error::ResolutionCap { .. })));
    }

    #[test]
    fn refine_keeps_cells_in_place() {
        let k = DiscreteNSet::new(2, 3, (0..9).map(|i| lv(&[i, -i])).collect()).unwrap();
        let r = k.refine(2).unwrap();
        for idx in 0..r.cell_count() {
            let c = r.cell_coords(idx);
            let coarse = k.cell_index(&[c[0] / 2, c[1] / 2]).unwrap();
            assert_eq!(r.shift(idx), k.shift(coarse));
        }
    }

    #[test]
    fn translate_examples() {
        let k = DiscreteNSet::zero(1, 3).unwrap();
        assert_eq!(k.translate_cell(&[1], &lv(&[0])).unwrap(), k);
        let t = k.translate_cell(&[2], &lv(&[1])).unwrap();
        assert_eq!(t.shifts(), &[lv(&[0]), lv(&[0]), lv(&[1])]);
        assert_eq!(t.translate_cell(&[2], &lv(&[-1])).unwrap(), k);
        assert_eq!(k.translate_cell(&[3], &lv(&[1])).unwrap_err(), Error::InvalidCell(vec![3]));
    }

    #[test]
    fn augment_examples() {
        let k = DiscreteNSet::zero(1, 3).unwrap();
        assert_eq!(k.augment(&lv(&[0])).unwrap().achieved_set(), k.achieved_set());
        let a = k.augment(&lv(&[5])).unwrap();
        assert_eq!(a.k(), 9);
        assert_eq!(a.achieved_set(), set1(&[1, 5]));
        assert_eq!(geometric_achieved(&a), *set1(&[1, 5]).members());
        let k = DiscreteNSet::zero(2, 3).unwrap();
        let a = k.augment(&lv(&[4, 7])).unwrap();
        assert_eq!(a.achieved_set(), SymmetricSet::unit_cube(2).with(&lv(&[4, 7])));
    }

    #[test]
    fn random_sets_match_geometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.random_range(1..=2);
            let k = rng.random_range(3..=4);
            let shifts = (0..k * if n == 2 { k } else { 1 })
                .map(|_| LatticeVector::new((0..n).map(|_| rng.random_range(-2..=2)).collect()))
                .collect();
            let set = DiscreteNSet::new(n, k, shifts).unwrap();
            let a = set.achieved_set();
            assert_eq!(*a.members(), geometric_achieved(&set));
            assert!(a.generates_full_lattice());
        }
    }
}
