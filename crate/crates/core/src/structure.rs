//! Characteristic graphs, necessary conditions, and obstruction certificates.
//!
//! The characteristic graph `G(A)` of a symmetric set `A` has one vertex per
//! `±` pair of nonzero members, with `a ~ b` whenever `a + b ∈ A` or
//! `a - b ∈ A`. An achievable set always generates `Z^n`, and in dimension at
//! least two some connected component of `G(A)` must itself be achievable,
//! hence generate `Z^n`.
//!
//! In the plane a finer decomposition into pieces `S_i` with boundaries
//! `Δ_i` forces an achievable subset inside `S_i ∪ ⟨Δ_i⟩` for some `i` or
//! inside `⋃⟨Δ_i⟩`. When none of those sets generates `Z^2`, the
//! decomposition certifies that `A` is not achievable.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Subgroup, SymmetricSet};

/// Largest number of `±` pairs accepted by the obstruction searches.
pub const OBSTRUCTION_PAIR_BUDGET: usize = 10;

/// `G(A)` on the canonical pair representatives of `A ∖ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicGraph {
    pub n: usize,
    /// Pair representatives in lexicographic order.
    pub vertices: Vec<LatticeVector>,
    /// Unordered edges `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl CharacteristicGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let m = self.vertices.len();
        let mut adj = vec![vec![false; m]; m];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }

    /// Vertex index of the pair containing `v`.
    pub fn vertex_of(&self, v: &LatticeVector) -> Option<usize> {
        self.vertices.binary_search(&v.pair_rep()).ok()
    }

    /// Connected components as sorted vertex index lists, ordered by their
    /// smallest vertex.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let m = self.vertices.len();
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; m];
        let mut out = Vec::new();
        for start in 0..m {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![start];
            label[start] = id;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for v in 0..m {
                    if adj[u][v] && label[v] == usize::MAX {
                        label[v] = id;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }
}

pub fn characteristic_graph(set: &SymmetricSet) -> CharacteristicGraph {
    let vertices = set.pairs();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let (a, b) = (&vertices[i], &vertices[j]);
            if set.contains(&(a + b)) || set.contains(&(a - b)) {
                edges.push((i, j));
            }
        }
    }
    CharacteristicGraph {
        n: set.n(),
        vertices,
        edges,
    }
}

/// `{0} ∪ ±(component)` for every connected component of the graph.
pub fn components(graph: &CharacteristicGraph) -> Vec<SymmetricSet> {
    graph
        .component_indices()
        .into_iter()
        .map(|comp| {
            let vs: Vec<&LatticeVector> = comp.iter().map(|&i| &graph.vertices[i]).collect();
            SymmetricSet::normalize(graph.n, vs).expect("graph vertices share the dimension")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    /// Pair representatives of the component.
    pub pairs: Vec<LatticeVector>,
    pub generates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum NecessaryVerdict {
    /// Decided positively (only possible in dimension one).
    Achievable { reason: String },
    NotAchievable { failed: String },
    /// All implemented necessary conditions hold.
    Inconclusive,
}

/// The outcome of every implemented necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    pub n: usize,
    pub symmetric_with_zero: bool,
    pub generates: bool,
    /// `[Z^n : ⟨A⟩]`, absent when `⟨A⟩` has lower rank.
    pub lattice_index: Option<i64>,
    pub components: Vec<ComponentReport>,
    /// Whether some component generates `Z^n`. Only a necessary condition
    /// for `n ≥ 2`: in dimension one `{0, ±2, ±3}` is achievable although
    /// neither of its components generates `Z`.
    pub component_generates: bool,
    /// `gcd(A)` in dimension one.
    pub gcd: Option<i64>,
    pub verdict: NecessaryVerdict,
}

pub fn necessary_report(set: &SymmetricSet) -> NecessaryReport {
    let n = set.n();
    let zero = LatticeVector::zero(n);
    let symmetric_with_zero = set.contains(&zero) && set.iter().all(|v| set.contains(&-v));
    let subgroup = set.subgroup();
    let generates = subgroup.generates_full_lattice();
    let graph = characteristic_graph(set);
    let components: Vec<ComponentReport> = components(&graph)
        .iter()
        .map(|b| ComponentReport {
            pairs: b.pairs(),
            generates: b.generates_full_lattice(),
        })
        .collect();
    let component_generates = components.iter().any(|c| c.generates);
    let gcd = (n == 1).then(|| subgroup.content());

    let verdict = if !symmetric_with_zero {
        NecessaryVerdict::NotAchievable {
            failed: "set is not symmetric or lacks the origin".into(),
        }
    } else if !generates {
        let failed = match (gcd, subgroup.index()) {
            (Some(g), _) => format!("gcd of the elements is {g}, not 1"),
            (None, Some(i)) => format!("the elements generate a sublattice of index {i}"),
            (None, None) => format!("the elements generate a sublattice of rank {} < {n}", subgroup.rank()),
        };
        NecessaryVerdict::NotAchievable { failed }
    } else if n == 1 {
        NecessaryVerdict::Achievable {
            reason: "a subset of Z is achievable exactly when its gcd is 1".into(),
        }
    } else if !component_generates {
        NecessaryVerdict::NotAchievable {
            failed: format!(
                "none of the {} components of the characteristic graph generates Z^{n}",
                components.len()
            ),
        }
    } else {
        NecessaryVerdict::Inconclusive
    };
    NecessaryReport {
        n,
        symmetric_with_zero,
        generates,
        lattice_index: subgroup.index(),
        components,
        component_generates,
        gcd,
        verdict,
    }
}

/// Which hypothesis the boundary sets `Δ_i` must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaCondition {
    /// `⟨Δ_i⟩` contains no primitive vector (proved in the plane).
    #[serde(rename = "theorem53")]
    NoPrimitive,
    /// `Z^n / ⟨Δ_i⟩` is not cyclic (conjectural, any dimension).
    #[serde(rename = "conjecture54")]
    NonCyclic,
}

impl DeltaCondition {
    pub fn holds(self, delta: &Subgroup) -> bool {
        match self {
            DeltaCondition::NoPrimitive => !delta.has_primitive(),
            DeltaCondition::NonCyclic => !delta.smith().cyclic,
        }
    }

    pub fn is_conjectural(self) -> bool {
        self == DeltaCondition::NonCyclic
    }

    fn describe(self) -> &'static str {
        match self {
            DeltaCondition::NoPrimitive => "contains a primitive element",
            DeltaCondition::NonCyclic => "has a cyclic quotient",
        }
    }
}

/// One piece `(S_i, Δ_i)`, both as sorted pair representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    #[serde(rename = "S")]
    pub s: Vec<LatticeVector>,
    #[serde(rename = "Delta")]
    pub delta: Vec<LatticeVector>,
}

/// A validated decomposition; serialized, it is the certificate format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    pub mode: DeltaCondition,
}

impl Decomposition {
    pub fn is_conjectural(&self) -> bool {
        self.mode.is_conjectural()
    }

    /// Whether the decomposition refutes achievability: no set that the
    /// conclusion allows generates `Z^n`.
    pub fn refutes(&self, n: usize) -> bool {
        let all_delta: Vec<&LatticeVector> = self.pieces.iter().flat_map(|p| &p.delta).collect();
        self.pieces.iter().all(|p| {
            !Subgroup::from_generators(n, p.s.iter().chain(&p.delta)).generates_full_lattice()
        }) && !Subgroup::from_generators(n, all_delta).generates_full_lattice()
    }
}

/// Checks the decomposition hypotheses for the pieces `s_list` (given by any
/// members of their pairs) and returns the pieces with their computed `Δ_i`.
pub fn validate_decomposition(
    set: &SymmetricSet,
    s_list: &[Vec<LatticeVector>],
    mode: DeltaCondition,
) -> Result<Decomposition> {
    let n = set.n();
    let graph = characteristic_graph(set);
    let adj = graph.adjacency();
    let m = graph.vertex_count();
    let mut violations = Vec::new();

    let mut pieces_idx: Vec<BTreeSet<usize>> = Vec::new();
    for (i, s) in s_list.iter().enumerate() {
        let mut idx = BTreeSet::new();
        for v in s {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.dim(),
                });
            }
            match graph.vertex_of(v) {
                Some(j) if !v.is_zero() => {
                    idx.insert(j);
                }
                _ => violations.push(format!("S_{} contains {v}, which is not a nonzero element of A", i + 1)),
            }
        }
        if s.is_empty() {
            violations.push(format!("S_{} is empty", i + 1));
        }
        pieces_idx.push(idx);
    }

    for i in 0..pieces_idx.len() {
        for j in i + 1..pieces_idx.len() {
            if let Some(v) = pieces_idx[i].intersection(&pieces_idx[j]).next() {
                violations.push(format!("S_{} and S_{} share {}", i + 1, j + 1, graph.vertices[*v]));
            }
            let touching = pieces_idx[i]
                .iter()
                .flat_map(|&a| pieces_idx[j].iter().map(move |&b| (a, b)))
                .find(|&(a, b)| a != b && adj[a][b]);
            if let Some((a, b)) = touching {
                violations.push(format!(
                    "S_{} and S_{} are adjacent via {} ~ {}",
                    i + 1,
                    j + 1,
                    graph.vertices[a],
                    graph.vertices[b]
                ));
            }
        }
    }

    let deltas: Vec<BTreeSet<usize>> = pieces_idx
        .iter()
        .map(|s| {
            (0..m)
                .filter(|v| !s.contains(v) && s.iter().any(|&u| adj[u][*v]))
                .collect()
        })
        .collect();

    let covered: BTreeSet<usize> = pieces_idx.iter().chain(&deltas).flatten().copied().collect();
    let uncovered: Vec<String> = (0..m)
        .filter(|v| !covered.contains(v))
        .map(|v| graph.vertices[v].to_string())
        .collect();
    if !uncovered.is_empty() {
        violations.push(format!("pieces do not cover {}", uncovered.join(", ")));
    }

    for (i, d) in deltas.iter().enumerate() {
        let sub = Subgroup::from_generators(n, d.iter().map(|&v| &graph.vertices[v]));
        if !mode.holds(&sub) {
            violations.push(format!("⟨Δ_{}⟩ {}", i + 1, mode.describe()));
        }
    }

    if !violations.is_empty() {
        return Err(Error::InvalidDecomposition(violations));
    }
    let pieces = pieces_idx
        .iter()
        .zip(&deltas)
        .map(|(s, d)| Piece {
            s: s.iter().map(|&v| graph.vertices[v].clone()).collect(),
            delta: d.iter().map(|&v| graph.vertices[v].clone()).collect(),
        })
        .collect();
    Ok(Decomposition { pieces, mode })
}

/// Searches for a decomposition of `A` (with `⟨Δ_i⟩` free of primitive
/// vectors) that refutes achievability. Planar sets only.
pub fn obstruction_search(set: &SymmetricSet) -> Result<Option<Decomposition>> {
    if set.n() != 2 {
        return Err(Error::UnsupportedDimension(set.n()));
    }
    search_decompositions(set, DeltaCondition::NoPrimitive)
}

/// The same search with the conjectural non-cyclic quotient condition. A
/// certificate found here never proves anything on its own.
pub fn noncyclic_search(set: &SymmetricSet) -> Result<Option<Decomposition>> {
    if set.n() < 2 {
        return Err(Error::UnsupportedDimension(set.n()));
    }
    search_decompositions(set, DeltaCondition::NonCyclic)
}

struct DecompositionSearch<'a> {
    n: usize,
    mode: DeltaCondition,
    vertices: &'a [LatticeVector],
    adj: Vec<Vec<bool>>,
    /// Label per pair: 0 = left for the boundaries, `i > 0` = piece `i`.
    labels: Vec<usize>,
    /// Memoized `(generates Z^n, satisfies the Δ condition)` per vertex
    /// bitmask.
    cache: BTreeMap<u32, (bool, bool)>,
}

impl DecompositionSearch<'_> {
    fn subgroup_facts(&mut self, mask: u32) -> (bool, bool) {
        if let Some(&facts) = self.cache.get(&mask) {
            return facts;
        }
        let gens: Vec<&LatticeVector> = (0..self.vertices.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &self.vertices[i])
            .collect();
        let sub = Subgroup::from_generators(self.n, gens);
        let facts = (sub.generates_full_lattice(), self.mode.holds(&sub));
        self.cache.insert(mask, facts);
        facts
    }

    fn dfs(&mut self, pos: usize, pieces: usize) -> Option<Vec<(u32, u32)>> {
        let m = self.vertices.len();
        if pos == m {
            return self.check(pieces);
        }
        for label in 0..=pieces + 1 {
            if label > 0 && (0..pos).any(|q| self.adj[pos][q] && self.labels[q] != 0 && self.labels[q] != label) {
                continue;
            }
            self.labels[pos] = label;
            let next = pieces.max(label);
            if let Some(found) = self.dfs(pos + 1, next) {
                return Some(found);
            }
        }
        self.labels[pos] = 0;
        None
    }

    fn check(&mut self, pieces: usize) -> Option<Vec<(u32, u32)>> {
        if pieces == 0 {
            return None;
        }
        let m = self.vertices.len();
        let mut s_masks = vec![0u32; pieces];
        for (v, &l) in self.labels.iter().enumerate() {
            if l > 0 {
                s_masks[l - 1] |= 1 << v;
            }
        }
        // pieces are pairwise non-adjacent, so every neighbor outside S_i
        // is unlabeled
        let d_masks: Vec<u32> = s_masks
            .iter()
            .map(|&s| {
                (0..m)
                    .filter(|&v| s >> v & 1 == 0 && (0..m).any(|u| s >> u & 1 == 1 && self.adj[u][v]))
                    .fold(0, |acc, v| acc | 1 << v)
            })
            .collect();
        let covered = s_masks.iter().chain(&d_masks).fold(0, |a, &b| a | b);
        if covered != (1u32 << m) - 1 {
            return None;
        }
        for &d in &d_masks {
            if !self.subgroup_facts(d).1 {
                return None;
            }
        }
        for (&s, &d) in s_masks.iter().zip(&d_masks) {
            if self.subgroup_facts(s | d).0 {
                return None;
            }
        }
        let all_d = d_masks.iter().fold(0, |a, &b| a | b);
        if self.subgroup_facts(all_d).0 {
            return None;
        }
        Some(s_masks.into_iter().zip(d_masks).collect())
    }
}

fn search_decompositions(set: &SymmetricSet, mode: DeltaCondition) -> Result<Option<Decomposition>> {
    let graph = characteristic_graph(set);
    let m = graph.vertex_count();
    if m > OBSTRUCTION_PAIR_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "decomposition search over {m} pairs (limit {OBSTRUCTION_PAIR_BUDGET})"
        )));
    }
    let mut search = DecompositionSearch {
        n: set.n(),
        mode,
        vertices: &graph.vertices,
        adj: graph.adjacency(),
        labels: vec![0; m],
        cache: BTreeMap::new(),
    };
    let Some(found) = search.dfs(0, 0) else {
        return Ok(None);
    };
    let to_vecs = |mask: u32| -> Vec<LatticeVector> {
        (0..m).filter(|v| mask >> v & 1 == 1).map(|v| graph.vertices[v].clone()).collect()
    };
    let mut pieces: Vec<Piece> = found
        .into_iter()
        .map(|(s, d)| Piece {
            s: to_vecs(s),
            delta: to_vecs(d),
        })
        .collect();
    pieces.sort_by(|a, b| a.s.cmp(&b.s));
    Ok(Some(Decomposition { pieces, mode }))
}
