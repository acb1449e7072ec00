//! The torus grid graph `G_{n,k}` and `Z^n`-valued edge assignments on it.
//!
//! Vertices are `(Z/k)^n`, indexed in mixed radix with the first coordinate
//! most significant, so index order is lexicographic order. Two vertices are
//! adjacent when their toroidal sup-distance is 1 (diagonals included).
//!
//! An oriented edge is a pair `(u, d)` with `d ∈ {-1,0,1}^n \ {0}`. Only edges
//! whose direction is lexicographically positive (first nonzero coordinate
//! positive) are stored; the reverse orientation is derived by antisymmetry.
//!
//! Winding vectors are measured as `lift(end) - lift(start)` in units of one
//! fundamental domain.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, SymmetricSet, MAX_DIM};
use crate::nset::DiscreteNSet;

/// Default cap on the number of cycles [`SimpleCycles`] will produce.
pub const DEFAULT_CYCLE_BUDGET: u64 = 10_000_000;

/// Where a step from a vertex lands, and how far it wrapped around the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub to: usize,
    /// `(u + d - v') / k`, each coordinate in `{-1, 0, 1}`.
    pub wrap: LatticeVector,
}

/// The graph `G_{n,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGraph {
    n: usize,
    k: usize,
    /// Lexicographically positive directions, sorted.
    positive: Vec<LatticeVector>,
    /// All nonzero directions, sorted.
    all: Vec<LatticeVector>,
    /// `all[i]` as `(positive index, sign)`.
    all_to_positive: Vec<(usize, i64)>,
    /// `neighbors[u * all.len() + i]`.
    neighbors: Vec<Step>,
}

fn direction_code(d: &[i64]) -> Option<usize> {
    let mut code = 0;
    for &c in d {
        if !(-1..=1).contains(&c) {
            return None;
        }
        code = code * 3 + (c + 1) as usize;
    }
    Some(code)
}

impl TorusGraph {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        if k < 3 {
            return Err(Error::InvalidResolution(k));
        }
        let mut all = Vec::new();
        for code in 0..3usize.pow(n as u32) {
            let mut rest = code;
            let mut d = vec![0i64; n];
            for c in d.iter_mut().rev() {
                *c = (rest % 3) as i64 - 1;
                rest /= 3;
            }
            let d = LatticeVector::new(d);
            if !d.is_zero() {
                all.push(d);
            }
        }
        let positive: Vec<LatticeVector> = all.iter().filter(|d| d.is_positive()).cloned().collect();
        let all_to_positive = all
            .iter()
            .map(|d| {
                let rep = d.pair_rep();
                let j = positive.binary_search(&rep).expect("positive direction");
                (j, if d.is_positive() { 1 } else { -1 })
            })
            .collect();
        let mut graph = Self {
            n,
            k,
            positive,
            all,
            all_to_positive,
            neighbors: Vec::new(),
        };
        let mut neighbors = Vec::with_capacity(graph.vertex_count() * graph.all.len());
        for u in 0..graph.vertex_count() {
            let uc = graph.coords(u);
            for d in &graph.all {
                neighbors.push(graph.raw_step(&uc, d.coords()));
            }
        }
        graph.neighbors = neighbors;
        Ok(graph)
    }

    fn raw_step(&self, u: &[usize], d: &[i64]) -> Step {
        let k = self.k as i64;
        let mut v = Vec::with_capacity(self.n);
        let mut wrap = Vec::with_capacity(self.n);
        for (&ui, &di) in u.iter().zip(d) {
            let s = ui as i64 + di;
            let r = s.rem_euclid(k);
            v.push(r as usize);
            wrap.push((s - r) / k);
        }
        Step {
            to: self.index(&v),
            wrap: LatticeVector::new(wrap),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.k.pow(self.n as u32)
    }

    /// Lexicographically positive directions; the stored edge orientations.
    pub fn directions(&self) -> &[LatticeVector] {
        &self.positive
    }

    /// Every nonzero direction in `{-1,0,1}^n`, sorted.
    pub fn all_directions(&self) -> &[LatticeVector] {
        &self.all
    }

    /// Number of unoriented edges.
    pub fn edge_count(&self) -> usize {
        self.vertex_count() * self.positive.len()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.k + c)
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for c in out.iter_mut().rev() {
            *c = index % self.k;
            index /= self.k;
        }
        out
    }

    /// Checked conversion of a cell coordinate list to an index.
    pub fn try_index(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.n || coords.iter().any(|&c| c >= self.k) {
            return Err(Error::InvalidCell(coords.to_vec()));
        }
        Ok(self.index(coords))
    }

    /// Step from `u` along the `i`-th entry of [`all_directions`](Self::all_directions).
    pub fn neighbor(&self, u: usize, i: usize) -> &Step {
        &self.neighbors[u * self.all.len() + i]
    }

    /// Step from `u` along the `j`-th positive direction.
    pub fn positive_step(&self, u: usize, j: usize) -> &Step {
        let i = self.all.binary_search(&self.positive[j]).expect("direction");
        self.neighbor(u, i)
    }

    /// Index into [`all_directions`](Self::all_directions) of `d`.
    pub fn direction_index(&self, d: &[i64]) -> Option<usize> {
        if d.len() != self.n {
            return None;
        }
        let code = direction_code(d)?;
        // codes of nonzero vectors skip the zero vector's code
        let zero = (3usize.pow(self.n as u32) - 1) / 2;
        match code.cmp(&zero) {
            std::cmp::Ordering::Less => Some(code),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(code - 1),
        }
    }

    /// Canonical key `(u, j, sign)` of the oriented edge `(u, all[i])`.
    fn canonical(&self, u: usize, i: usize) -> (usize, usize, i64) {
        let (j, sign) = self.all_to_positive[i];
        if sign > 0 {
            (u, j, 1)
        } else {
            (self.neighbor(u, i).to, j, -1)
        }
    }

    /// Winding vector of a loop: `(lift(end) - lift(start)) / k`.
    pub fn winding_vector(&self, p: &GridPath) -> Result<LatticeVector> {
        let total = self.lift_displacement(p)?;
        let k = self.k as i64;
        if total.coords().iter().any(|c| c % k != 0) {
            return Err(Error::NotALoop);
        }
        Ok(LatticeVector::new(total.coords().iter().map(|c| c / k).collect()))
    }

    fn lift_displacement(&self, p: &GridPath) -> Result<LatticeVector> {
        self.check_path(p)?;
        let mut total = vec![0i64; self.n];
        for d in &p.steps {
            for (t, c) in total.iter_mut().zip(d.coords()) {
                *t += c;
            }
        }
        Ok(LatticeVector::new(total))
    }

    fn check_path(&self, p: &GridPath) -> Result<()> {
        self.try_index(&p.start)?;
        for (index, d) in p.steps.iter().enumerate() {
            if self.direction_index(d.coords()).is_none() {
                return Err(Error::InvalidStep { index, step: d.clone() });
            }
        }
        Ok(())
    }

    /// The loop taking `k` steps along the `i`-th axis from the origin.
    pub fn axis_loop(&self, i: usize) -> GridPath {
        GridPath {
            start: vec![0; self.n],
            steps: vec![LatticeVector::unit(self.n, i); self.k],
        }
    }

    /// Vertex-simple cycles with at most `max_len` edges, each reported once
    /// up to rotation and reflection.
    pub fn simple_cycles(&self, max_len: usize) -> SimpleCycles<'_> {
        SimpleCycles::new(self, max_len, DEFAULT_CYCLE_BUDGET)
    }

    /// Every triple of distinct corners of every unit cell, as a loop
    /// `a → b → c → a`. Unit cells are complete subgraphs, so these are exactly
    /// the contractible triangles.
    pub fn triangles(&self) -> impl Iterator<Item = [(usize, usize); 3]> + '_ {
        let n = self.n;
        let corners: Vec<LatticeVector> = (0..1usize << n)
            .map(|mask| LatticeVector::new((0..n).map(|b| ((mask >> (n - 1 - b)) & 1) as i64).collect()))
            .collect();
        let mut triples = Vec::new();
        for a in 0..corners.len() {
            for b in a + 1..corners.len() {
                for c in b + 1..corners.len() {
                    let dir = |x: usize, y: usize| {
                        self.direction_index((&corners[y] - &corners[x]).coords()).expect("adjacent corners")
                    };
                    triples.push((a, [dir(a, b), dir(b, c), dir(c, a)]));
                }
            }
        }
        (0..self.vertex_count()).flat_map(move |u| {
            let corner_vertices: Vec<usize> = corners
                .iter()
                .map(|c| {
                    let i = self.direction_index(c.coords());
                    i.map_or(u, |i| self.neighbor(u, i).to)
                })
                .collect();
            triples
                .clone()
                .into_iter()
                .map(move |(a, [d0, d1, d2])| {
                    let v0 = corner_vertices[a];
                    let v1 = self.neighbor(v0, d0).to;
                    let v2 = self.neighbor(v1, d1).to;
                    [(v0, d0), (v1, d1), (v2, d2)]
                })
        })
    }
}

/// A walk on the torus grid: a start cell and a sequence of unit steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPath {
    pub start: Vec<usize>,
    pub steps: Vec<LatticeVector>,
}

impl GridPath {
    pub fn new(start: Vec<usize>, steps: Vec<LatticeVector>) -> Self {
        Self { start, steps }
    }

    /// The vertex reached after all steps.
    pub fn end(&self, graph: &TorusGraph) -> Result<Vec<usize>> {
        let disp = graph.lift_displacement(self)?;
        let k = graph.k() as i64;
        Ok(self
            .start
            .iter()
            .zip(disp.coords())
            .map(|(&s, &d)| (s as i64 + d).rem_euclid(k) as usize)
            .collect())
    }

    pub fn is_loop(&self, graph: &TorusGraph) -> Result<bool> {
        Ok(self.end(graph)? == self.start)
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self, graph: &TorusGraph) -> Result<GridPath> {
        Ok(GridPath {
            start: self.end(graph)?,
            steps: self.steps.iter().rev().map(|d| -d).collect(),
        })
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &GridPath, graph: &TorusGraph) -> Result<GridPath> {
        if self.end(graph)? != other.start {
            return Err(Error::InvalidCell(other.start.clone()));
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(GridPath {
            start: self.start.clone(),
            steps,
        })
    }
}

/// Closedness, exactness and properness of an assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub closed: bool,
    pub exact: bool,
    pub proper: bool,
}

/// A `Z^n`-valued, antisymmetric function on the oriented edges of `G_{n,k}`
/// (a discrete one-form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAssignment {
    graph: TorusGraph,
    /// `values[u * directions.len() + j]` is the value of `(u, directions[j])`.
    values: Vec<LatticeVector>,
}

impl EdgeAssignment {
    pub fn zero(graph: &TorusGraph) -> Self {
        Self {
            values: vec![LatticeVector::zero(graph.n()); graph.edge_count()],
            graph: graph.clone(),
        }
    }

    /// Builds an assignment from its values on positively oriented edges.
    pub fn from_fn(graph: &TorusGraph, mut f: impl FnMut(usize, usize, &Step) -> LatticeVector) -> Self {
        let mut values = Vec::with_capacity(graph.edge_count());
        for u in 0..graph.vertex_count() {
            for j in 0..graph.directions().len() {
                let v = f(u, j, graph.positive_step(u, j));
                assert_eq!(v.dim(), graph.n());
                values.push(v);
            }
        }
        Self {
            graph: graph.clone(),
            values,
        }
    }

    /// The assignment of a discrete N-set: `value(u, d) = f(u) - f(v') + w`.
    pub fn differentiate(set: &DiscreteNSet) -> Self {
        let graph = set.graph();
        Self::from_fn(&graph, |u, _, step| &(&set.shift(u) - &set.shift(step.to)) + &step.wrap)
    }

    pub fn graph(&self) -> &TorusGraph {
        &self.graph
    }

    /// Value of the positively oriented edge `(u, directions[j])`.
    pub fn positive_value(&self, u: usize, j: usize) -> &LatticeVector {
        &self.values[u * self.graph.directions().len() + j]
    }

    /// Value of `(u, all_directions[i])`.
    pub fn value_at(&self, u: usize, i: usize) -> LatticeVector {
        let (base, j, sign) = self.graph.canonical(u, i);
        let v = self.positive_value(base, j);
        if sign > 0 {
            v.clone()
        } else {
            -v
        }
    }

    /// Value of the oriented edge `(u, d)`.
    pub fn value(&self, u: &[usize], d: &LatticeVector) -> Result<LatticeVector> {
        let u = self.graph.try_index(u)?;
        let i = self.graph.direction_index(d.coords()).ok_or(Error::InvalidStep {
            index: 0,
            step: d.clone(),
        })?;
        Ok(self.value_at(u, i))
    }

    /// Sets the value of `(u, d)`; the reverse orientation gets `-value`.
    pub fn set(&mut self, u: &[usize], d: &LatticeVector, value: LatticeVector) -> Result<()> {
        let u = self.graph.try_index(u)?;
        let i = self.graph.direction_index(d.coords()).ok_or(Error::InvalidStep {
            index: 0,
            step: d.clone(),
        })?;
        if value.dim() != self.graph.n() {
            return Err(Error::DimensionMismatch {
                expected: self.graph.n(),
                found: value.dim(),
            });
        }
        let (base, j, sign) = self.graph.canonical(u, i);
        let slot = base * self.graph.directions().len() + j;
        self.values[slot] = if sign > 0 { value } else { -value };
        Ok(())
    }

    /// Sum of edge values along `p`.
    pub fn evaluate(&self, p: &GridPath) -> Result<LatticeVector> {
        self.graph.check_path(p)?;
        let mut u = self.graph.index(&p.start);
        let mut total = LatticeVector::zero(self.graph.n());
        for d in &p.steps {
            let i = self.graph.direction_index(d.coords()).expect("checked step");
            total = &total + &self.value_at(u, i);
            u = self.graph.neighbor(u, i).to;
        }
        Ok(total)
    }

    fn evaluate_indices(&self, steps: &[(usize, usize)]) -> LatticeVector {
        steps
            .iter()
            .fold(LatticeVector::zero(self.graph.n()), |acc, &(u, i)| &acc + &self.value_at(u, i))
    }

    /// Closed: every unit-cell triangle sums to zero. Exact: closed and every
    /// axis loop evaluates to 0. Proper: closed and axis loop `i` evaluates to
    /// `e_i`.
    pub fn classify(&self) -> Classification {
        let closed = self.graph.triangles().all(|t| self.evaluate_indices(&t).is_zero());
        let n = self.graph.n();
        let axis: Vec<LatticeVector> = (0..n)
            .map(|i| self.evaluate(&self.graph.axis_loop(i)).expect("axis loop is a valid path"))
            .collect();
        Classification {
            closed,
            exact: closed && axis.iter().all(LatticeVector::is_zero),
            proper: closed && axis.iter().enumerate().all(|(i, v)| *v == LatticeVector::unit(n, i)),
        }
    }

    /// `{0} ∪ {±value(e)}` over all edges.
    pub fn edge_values(&self) -> SymmetricSet {
        SymmetricSet::normalize(self.graph.n(), &self.values).expect("values share the graph dimension")
    }

    /// The discrete N-set whose assignment this is, pinned so that
    /// `f(base) = 0`. Requires a proper assignment.
    pub fn integrate(&self, base: &[usize]) -> Result<DiscreteNSet> {
        let base = self.graph.try_index(base)?;
        if !self.classify().proper {
            return Err(Error::NotProper);
        }
        let g = &self.graph;
        let mut shifts: Vec<Option<LatticeVector>> = vec![None; g.vertex_count()];
        shifts[base] = Some(LatticeVector::zero(g.n()));
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            let fu = shifts[u].clone().expect("visited");
            for i in 0..g.all_directions().len() {
                let step = g.neighbor(u, i);
                if shifts[step.to].is_none() {
                    shifts[step.to] = Some(&(&fu - &self.value_at(u, i)) + &step.wrap);
                    queue.push_back(step.to);
                }
            }
        }
        DiscreteNSet::new(g.n(), g.k(), shifts.into_iter().map(|s| s.expect("torus graph is connected")).collect())
    }
}

/// A vertex-simple cycle with its winding vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCycle {
    pub vertices: Vec<usize>,
    pub path: GridPath,
    pub winding: LatticeVector,
}

impl SimpleCycle {
    /// Whether two edges of the cycle cross away from the vertices.
    ///
    /// Edges are straight segments between corners of unit cells; two such
    /// segments meet at a point other than a shared endpoint exactly when
    /// they are diagonals of one face with a common midpoint (the two
    /// diagonals of a square, say). A vertex-simple cycle can still cross
    /// itself this way.
    pub fn is_self_crossing(&self, graph: &TorusGraph) -> bool {
        let two_k = 2 * graph.k() as i64;
        let mut pos: Vec<i64> = self.path.start.iter().map(|&c| c as i64).collect();
        let mut midpoints = std::collections::BTreeSet::new();
        for d in &self.path.steps {
            let mid: Vec<i64> = pos
                .iter()
                .zip(d.coords())
                .map(|(&p, &c)| (2 * p + c).rem_euclid(two_k))
                .collect();
            if !midpoints.insert(mid) {
                return true;
            }
            for (p, c) in pos.iter_mut().zip(d.coords()) {
                *p += c;
            }
        }
        false
    }
}

/// Depth-first enumeration of vertex-simple cycles.
///
/// Each cycle starts at its smallest vertex and is oriented so that its
/// second vertex is smaller than its last, which picks one representative
/// per rotation/reflection class. Output order is deterministic.
pub struct SimpleCycles<'g> {
    graph: &'g TorusGraph,
    max_len: usize,
    next_start: usize,
    stack: Vec<(usize, usize)>,
    on_path: Vec<bool>,
    produced: u64,
    budget: u64,
    done: bool,
}

impl<'g> SimpleCycles<'g> {
    pub fn new(graph: &'g TorusGraph, max_len: usize, budget: u64) -> Self {
        Self {
            graph,
            max_len,
            next_start: 0,
            stack: Vec::new(),
            on_path: vec![false; graph.vertex_count()],
            produced: 0,
            budget,
            done: false,
        }
    }

    fn emit(&self, closing_dir: usize) -> SimpleCycle {
        let g = self.graph;
        let vertices: Vec<usize> = self.stack.iter().map(|&(v, _)| v).collect();
        let mut steps: Vec<LatticeVector> = self
            .stack
            .windows(2)
            .map(|w| g.all_directions()[w[0].1 - 1].clone())
            .collect();
        steps.push(g.all_directions()[closing_dir].clone());
        let path = GridPath {
            start: g.coords(vertices[0]),
            steps,
        };
        let winding = g.winding_vector(&path).expect("cycle closes");
        SimpleCycle { vertices, path, winding }
    }
}

impl Iterator for SimpleCycles<'_> {
    type Item = Result<SimpleCycle>;

    fn next(&mut self) -> Option<Self::Item> {
        let ndirs = self.graph.all_directions().len();
        loop {
            if self.done {
                return None;
            }
            let Some(&(v, di)) = self.stack.last() else {
                if self.next_start >= self.graph.vertex_count() || self.max_len < 3 {
                    self.done = true;
                    return None;
                }
                self.stack.push((self.next_start, 0));
                self.on_path[self.next_start] = true;
                self.next_start += 1;
                continue;
            };
            if di == ndirs {
                self.stack.pop();
                self.on_path[v] = false;
                continue;
            }
            self.stack.last_mut().expect("nonempty").1 += 1;
            let w = self.graph.neighbor(v, di).to;
            let s = self.stack[0].0;
            if w == s {
                if self.stack.len() >= 3 && self.stack[1].0 < v {
                    if self.produced >= self.budget {
                        self.done = true;
                        return Some(Err(Error::BudgetExceeded(format!(
                            "more than {} simple cycles",
                            self.budget
                        ))));
                    }
                    self.produced += 1;
                    return Some(Ok(self.emit(di)));
                }
            } else if w > s && !self.on_path[w] && self.stack.len() < self.max_len {
                self.stack.push((w, 0));
                self.on_path[w] = true;
            }
        }
    }
}
