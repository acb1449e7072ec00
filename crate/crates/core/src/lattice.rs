//! Exact integer-lattice algebra.
//!
//! Vectors of `Z^n`, finite symmetric sets containing the origin, and
//! subgroups of `Z^n` held in Hermite normal form. Smith invariants describe
//! the quotient `Z^n / L`.
//!
//! All arithmetic is checked 64-bit; an overflow panics. Inputs handled by
//! this crate are small, so an overflow always indicates a caller bug.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::SetFile;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 4;

#[inline]
pub(crate) fn add_i(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("lattice arithmetic overflow")
}

#[inline]
pub(crate) fn sub_i(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("lattice arithmetic overflow")
}

#[inline]
pub(crate) fn mul_i(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("lattice arithmetic overflow")
}

/// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    i64::try_from(a).expect("lattice arithmetic overflow")
}

/// An element of `Z^n`. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![0; n] }
    }

    /// The `i`-th standard basis vector of `Z^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn sup_norm(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Greatest common divisor of the coordinates (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.coords.iter().fold(0, |g, &c| gcd(g, c))
    }

    /// Nonzero with coprime coordinates.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// True when the first nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.coords.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    /// Representative of `{v, -v}` whose first nonzero coordinate is positive.
    pub fn pair_rep(&self) -> Self {
        if self.is_zero() || self.is_positive() {
            self.clone()
        } else {
            -self
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::new(self.coords.iter().map(|&c| mul_i(c, s)).collect())
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "lattice vectors of different dimension");
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(coords: Vec<i64>) -> Self {
        Self::new(coords)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(coords: [i64; N]) -> Self {
        Self::new(coords.to_vec())
    }
}

impl std::ops::Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.check_dim(rhs);
        LatticeVector::new(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| add_i(a, b)).collect())
    }
}

impl std::ops::Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.check_dim(rhs);
        LatticeVector::new(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| sub_i(a, b)).collect())
    }
}

impl std::ops::Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(self.coords.iter().map(|&c| sub_i(0, c)).collect())
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        -&self
    }
}

fn check_dims<'a>(n: usize, vectors: impl IntoIterator<Item = &'a LatticeVector>) -> Result<()> {
    for v in vectors {
        if v.dim() != n {
            return Err(Error::MixedDimension {
                expected: n,
                found: v.dim(),
            });
        }
    }
    Ok(())
}

/// A finite subset of `Z^n` that contains the origin and is closed under
/// negation. Members are kept in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "SetFile", into = "SetFile")]
pub struct SymmetricSet {
    n: usize,
    members: BTreeSet<LatticeVector>,
}

impl SymmetricSet {
    /// Negation-closure of `vectors` together with the origin.
    pub fn normalize<'a>(n: usize, vectors: impl IntoIterator<Item = &'a LatticeVector>) -> Result<Self> {
        let mut members = BTreeSet::new();
        members.insert(LatticeVector::zero(n));
        for v in vectors {
            check_dims(n, [v])?;
            members.insert(-v);
            members.insert(v.clone());
        }
        Ok(Self { n, members })
    }

    /// Like [`normalize`](Self::normalize), but infers `n` from the first
    /// vector. Fails on an empty list.
    pub fn from_vectors(vectors: &[LatticeVector]) -> Result<Self> {
        let n = vectors.first().map(LatticeVector::dim).ok_or(Error::MixedDimension {
            expected: 0,
            found: 0,
        })?;
        Self::normalize(n, vectors)
    }

    /// Accepts `vectors` only if they already form a symmetric set with 0.
    pub fn strict<'a>(n: usize, vectors: impl IntoIterator<Item = &'a LatticeVector>) -> Result<Self> {
        let mut members = BTreeSet::new();
        for v in vectors {
            check_dims(n, [v])?;
            members.insert(v.clone());
        }
        let zero = LatticeVector::zero(n);
        if !members.contains(&zero) {
            return Err(Error::MissingZero);
        }
        if let Some(v) = members.iter().find(|v| !members.contains(&-*v)) {
            return Err(Error::NotSymmetric(v.clone()));
        }
        Ok(Self { n, members })
    }

    /// Same set expressed from its positive pair representatives.
    pub fn from_pairs(n: usize, pairs: &[LatticeVector]) -> Result<Self> {
        Self::normalize(n, pairs)
    }

    /// `{-1,0,1}^n`, achieved by the standard unit-cube tiling.
    pub fn unit_cube(n: usize) -> Self {
        let mut members = BTreeSet::new();
        let total = 3usize.pow(n as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut coords = vec![0; n];
            for c in coords.iter_mut().rev() {
                *c = (rest % 3) as i64 - 1;
                rest /= 3;
            }
            members.insert(LatticeVector::new(coords));
        }
        Self { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.members.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticeVector> {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<LatticeVector> {
        &self.members
    }

    /// Canonical representatives of the `±` pairs of nonzero members, in
    /// lexicographic order.
    pub fn pairs(&self) -> Vec<LatticeVector> {
        self.members.iter().filter(|v| v.is_positive()).cloned().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            members: self.members.union(&other.members).cloned().collect(),
        }
    }

    /// `self ∪ {±x}`.
    pub fn with(&self, x: &LatticeVector) -> Self {
        let mut out = self.clone();
        out.members.insert(x.clone());
        out.members.insert(-x);
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn max_sup_norm(&self) -> i64 {
        self.members.iter().map(LatticeVector::sup_norm).max().unwrap_or(0)
    }

    /// The subgroup `⟨A⟩` generated by the set.
    pub fn subgroup(&self) -> Subgroup {
        Subgroup::from_generators(self.n, self.members.iter())
    }

    pub fn generates_full_lattice(&self) -> bool {
        self.subgroup().generates_full_lattice()
    }

    /// Image under a 2×2 integer matrix.
    pub fn map(&self, m: &Matrix2) -> Self {
        assert_eq!(self.n, 2);
        Self {
            n: 2,
            members: self.members.iter().map(|v| m.apply(v)).collect(),
        }
    }
}

impl fmt::Display for SymmetricSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Row-style Hermite normal form of an integer matrix, zero rows dropped.
///
/// Rows are in echelon form with strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`.
fn hermite_rows(mut rows: Vec<Vec<i64>>, n: usize) -> Vec<Vec<i64>> {
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            let best = (pivot_row..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].unsigned_abs());
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let pivot = rows[pivot_row][col];
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                let q = rows[i][col] / pivot;
                if q != 0 {
                    for j in col..n {
                        rows[i][j] = sub_i(rows[i][j], mul_i(q, rows[pivot_row][j]));
                    }
                }
                if rows[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] == 0 {
            continue;
        }
        if rows[pivot_row][col] < 0 {
            for x in rows[pivot_row].iter_mut() {
                *x = sub_i(0, *x);
            }
        }
        let pivot = rows[pivot_row][col];
        for i in 0..pivot_row {
            let q = rows[i][col].div_euclid(pivot);
            if q != 0 {
                for j in col..n {
                    rows[i][j] = sub_i(rows[i][j], mul_i(q, rows[pivot_row][j]));
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

/// A subgroup of `Z^n`, stored as its canonical Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    n: usize,
    basis: Vec<LatticeVector>,
}

impl Subgroup {
    /// The canonical Hermite basis of the integer span of `generators`.
    ///
    /// Panics if a generator does not have dimension `n`.
    pub fn from_generators<'a>(n: usize, generators: impl IntoIterator<Item = &'a LatticeVector>) -> Self {
        let rows: Vec<Vec<i64>> = generators
            .into_iter()
            .map(|v| {
                assert_eq!(v.dim(), n, "generator of wrong dimension");
                v.coords().to_vec()
            })
            .filter(|r| r.iter().any(|&c| c != 0))
            .collect();
        let basis = hermite_rows(rows, n).into_iter().map(LatticeVector::new).collect();
        Self { n, basis }
    }

    /// Checked variant of [`from_generators`](Self::from_generators).
    pub fn try_from_generators(n: usize, generators: &[LatticeVector]) -> Result<Self> {
        check_dims(n, generators)?;
        Ok(Self::from_generators(n, generators))
    }

    pub fn trivial(n: usize) -> Self {
        Self { n, basis: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    fn pivots(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.basis.iter().map(|b| {
            let col = b.coords().iter().position(|&c| c != 0).expect("zero row in Hermite basis");
            (col, b.coords()[col])
        })
    }

    /// Membership by back-substitution against the Hermite basis.
    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            });
        }
        let mut residual = v.coords().to_vec();
        for (row, (col, pivot)) in self.basis.iter().zip(self.pivots()) {
            if residual[..col].iter().any(|&c| c != 0) {
                return Ok(false);
            }
            if residual[col] % pivot != 0 {
                return Ok(false);
            }
            let q = residual[col] / pivot;
            for (r, &b) in residual.iter_mut().zip(row.coords()) {
                *r = sub_i(*r, mul_i(q, b));
            }
        }
        Ok(residual.iter().all(|&c| c == 0))
    }

    /// Index `[Z^n : L]` when `L` has full rank.
    pub fn index(&self) -> Option<i64> {
        (self.rank() == self.n).then(|| self.pivots().fold(1, |acc, (_, p)| mul_i(acc, p)))
    }

    /// True iff the subgroup is all of `Z^n`.
    pub fn generates_full_lattice(&self) -> bool {
        self.index() == Some(1)
    }

    /// Greatest common divisor of all basis entries; every member is a
    /// multiple of it.
    pub fn content(&self) -> i64 {
        self.basis.iter().fold(0, |g, b| gcd(g, b.content()))
    }

    /// Whether some member has coprime coordinates. Unimodular changes of
    /// coordinates preserve the coordinate gcd, so this holds exactly when the
    /// content is 1.
    pub fn has_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis.iter().all(|b| other.contains(b).unwrap_or(false))
    }

    pub fn smith(&self) -> SmithForm {
        let rows: Vec<Vec<i64>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        SmithForm::new(self.n, smith_diagonal(rows, self.n))
    }
}

/// Nonzero diagonal of the Smith normal form, `d_1 | d_2 | ...`, all positive.
pub fn smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&m, t, t) else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let pivot = m[t][t];
            for i in t + 1..rows {
                let q = m[i][t] / pivot;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] = sub_i(m[i][j], mul_i(q, m[t][j]));
                    }
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / pivot;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] = sub_i(row[j], mul_i(q, row[t]));
                    }
                }
            }
            let col_rest = (t + 1..rows).find(|&i| m[i][t] != 0);
            let row_rest = (t + 1..cols).find(|&j| m[t][j] != 0);
            if let Some(i) = col_rest {
                if m[i][t].unsigned_abs() < pivot.unsigned_abs() {
                    m.swap(t, i);
                }
                continue;
            }
            if let Some(j) = row_rest {
                if m[t][j].unsigned_abs() < pivot.unsigned_abs() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                }
                continue;
            }
            // pivot now isolated; enforce divisibility into the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] = add_i(m[t][j], m[i][j]);
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

fn min_entry(m: &[Vec<i64>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(r0) {
        for (j, &x) in row.iter().enumerate().skip(c0) {
            if x != 0 && best.is_none_or(|(bi, bj)| x.unsigned_abs() < m[bi][bj].unsigned_abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Invariant factors of a subgroup `L ⊆ Z^n` and the shape of `Z^n / L`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SmithForm {
    /// Ambient dimension.
    pub n: usize,
    /// `d_1 | d_2 | ... | d_r`.
    pub factors: Vec<i64>,
    /// Rank of the free part of the quotient, `n - r`.
    pub free_rank: usize,
    /// The factors greater than one.
    pub torsion: Vec<i64>,
    /// The quotient is generated by one element. `Z` counts as cyclic.
    pub cyclic: bool,
}

impl SmithForm {
    fn new(n: usize, factors: Vec<i64>) -> Self {
        let free_rank = n - factors.len();
        let torsion: Vec<i64> = factors.iter().copied().filter(|&d| d > 1).collect();
        let cyclic = free_rank + torsion.len() <= 1;
        Self {
            n,
            factors,
            free_rank,
            torsion,
            cyclic,
        }
    }

    /// Human-readable quotient, e.g. `Z ⊕ Z/2`; `0` for the trivial group.
    pub fn quotient(&self) -> String {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

/// A 2×2 integer matrix acting on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Matrix2 {
    pub rows: [[i64; 2]; 2],
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 { rows: [[1, 0], [0, 1]] };

    pub fn new(rows: [[i64; 2]; 2]) -> Self {
        Self { rows }
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.rows;
        sub_i(mul_i(a, d), mul_i(b, c))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(v.dim(), 2);
        let (x, y) = (v.coords()[0], v.coords()[1]);
        let [[a, b], [c, d]] = self.rows;
        LatticeVector::new(vec![add_i(mul_i(a, x), mul_i(b, y)), add_i(mul_i(c, x), mul_i(d, y))])
    }

    pub fn compose(&self, other: &Matrix2) -> Matrix2 {
        let mut rows = [[0; 2]; 2];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = add_i(mul_i(self.rows[i][0], other.rows[0][j]), mul_i(self.rows[i][1], other.rows[1][j]));
            }
        }
        Matrix2 { rows }
    }

    /// Integer inverse; `None` unless the determinant is ±1.
    pub fn inverse(&self) -> Option<Matrix2> {
        let det = self.det();
        if det.abs() != 1 {
            return None;
        }
        let [[a, b], [c, d]] = self.rows;
        Some(Matrix2 {
            rows: [[d * det, -b * det], [-c * det, a * det]],
        })
    }
}

/// The unimodular matrix with columns `u` and `v`, so that `M e_1 = u` and
/// `M e_2 = v`.
pub fn unimodular_to_basis(u: &LatticeVector, v: &LatticeVector) -> Result<Matrix2> {
    for w in [u, v] {
        if w.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: w.dim(),
            });
        }
    }
    let m = Matrix2::new([[u.coords()[0], v.coords()[0]], [u.coords()[1], v.coords()[1]]]);
    if !m.is_unimodular() {
        return Err(Error::NotABasis {
            u: u.clone(),
            v: v.clone(),
            det: m.det(),
        });
    }
    Ok(m)
}
