//! Exhaustive search for exactly `k`-discrete witnesses, and catalogs of all
//! achieved sets at a fixed resolution.
//!
//! Both searches walk translate maps `f` cell by cell in lexicographic cell
//! order with `f(0) = 0` pinned (translating all cubes by a lattice vector
//! does not change the achieved set). Translates are restricted to the box
//! `|f|_∞ ≤ bound` and tried in a fixed value order: by sup-norm, then
//! lexicographically, so `f ≡ 0` is always the first map visited.
//!
//! Work is split across threads at a fixed depth; every subtree is searched
//! in the same order regardless of the thread count and results are merged
//! by subtree position, so answers do not depend on scheduling. The node
//! limit is a single budget shared by all workers.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, SymmetricSet, MAX_DIM};
use crate::nset::{resolution_cap, DiscreteNSet};
use crate::structure::{necessary_report, obstruction_search, Decomposition, NecessaryReport, NecessaryVerdict};
use crate::torus::TorusGraph;

/// How a witness must relate to the target set `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `A(K) ⊆ A`.
    Subset,
    /// `A(K) = A`.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: usize,
    /// Largest sup-norm of any translate `f(u)`.
    pub bound: i64,
    pub mode: Mode,
    /// Total number of search nodes (partial assignments) allowed.
    pub node_limit: u64,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            k: 3,
            bound: 2,
            mode: Mode::Exact,
            node_limit: 100_000_000,
            threads: 0,
        }
    }
}

impl SearchConfig {
    /// Advisory messages about settings that make the search unlikely to
    /// succeed.
    pub fn warnings(&self, target: &SymmetricSet) -> Vec<String> {
        let mut out = Vec::new();
        let need = target.max_sup_norm() + 1;
        if self.bound < need {
            out.push(format!(
                "bound {} is below the recommended max |a| + 1 = {need}; the bounded search may miss witnesses",
                self.bound
            ));
        }
        out
    }
}

/// Cells, neighbours and integer encodings shared by both searches.
///
/// A translate in the box `[-b, b]^n` is a *value index* (mixed radix
/// `2b + 1`, first coordinate most significant). An edge value lies in
/// `[-(2b+1), 2b+1]^n` and is encoded the same way with radix `R = 4b + 3`;
/// `spread[x]` places a translate in that radix so the edge value
/// `f(v) - f(u) + w` has index `spread[f(v)] - spread[f(u)] + shift(w)`.
struct Layout {
    n: usize,
    k: usize,
    cells: usize,
    bound: i64,
    values: Vec<[i64; MAX_DIM]>,
    /// Value indices in search order.
    order: Vec<u32>,
    /// Position of each value index in `order`.
    rank: Vec<u32>,
    spread: Vec<i64>,
    radix: i64,
    edge_box: usize,
    /// For each cell `v`, its neighbours `u < v` as `(u, wrap, shift(wrap))`,
    /// where the edge value is `f(v) - f(u) + wrap`.
    back: Vec<Vec<(u32, [i64; MAX_DIM], i64)>>,
    /// Number of edges whose later endpoint is beyond the cell.
    edges_after: Vec<usize>,
    zero_value: u32,
}

impl Layout {
    fn new(n: usize, k: usize, bound: i64) -> Result<Self> {
        if k > resolution_cap(n) {
            return Err(Error::ResolutionCap {
                n,
                k,
                cap: resolution_cap(n),
            });
        }
        if bound < 0 {
            return Err(Error::InvalidSpec(format!("negative bound {bound}")));
        }
        let graph = TorusGraph::new(n, k)?;
        let side = 2 * bound + 1;
        let radix = 4 * bound + 3;
        let count = (side as u64)
            .checked_pow(n as u32)
            .filter(|&c| c <= 1 << 24)
            .ok_or_else(|| Error::BudgetExceeded(format!("value box of side {side} in dimension {n}")))?
            as usize;
        let edge_box = (radix as u64)
            .checked_pow(n as u32)
            .filter(|&c| c <= 1 << 28)
            .ok_or_else(|| Error::BudgetExceeded(format!("edge value box of side {radix} in dimension {n}")))?
            as usize;

        let mut values = Vec::with_capacity(count);
        let mut spread = Vec::with_capacity(count);
        for idx in 0..count {
            let mut c = [0i64; MAX_DIM];
            let mut rest = idx as i64;
            for i in (0..n).rev() {
                c[i] = rest % side - bound;
                rest /= side;
            }
            spread.push((0..n).fold(0, |acc, i| acc * radix + c[i] + bound));
            values.push(c);
        }
        let mut order: Vec<u32> = (0..count as u32).collect();
        order.sort_by_key(|&v| (values[v as usize][..n].iter().map(|c| c.abs()).max().unwrap_or(0), v));
        let mut rank = vec![0u32; count];
        for (r, &v) in order.iter().enumerate() {
            rank[v as usize] = r as u32;
        }

        let cells = graph.vertex_count();
        let mut back = Vec::with_capacity(cells);
        for v in 0..cells {
            let mut list = Vec::new();
            for i in 0..graph.all_directions().len() {
                let step = graph.neighbor(v, i);
                if step.to < v {
                    let mut w = [0i64; MAX_DIM];
                    w[..n].copy_from_slice(step.wrap.coords());
                    let shift = (0..n).fold(0, |acc, i| acc * radix + w[i] + 2 * bound + 1);
                    list.push((step.to as u32, w, shift));
                }
            }
            back.push(list);
        }
        let total: usize = back.iter().map(Vec::len).sum();
        let mut edges_after = Vec::with_capacity(cells);
        let mut seen = 0;
        for list in &back {
            seen += list.len();
            edges_after.push(total - seen);
        }
        let zero_value = ((count - 1) / 2) as u32;
        Ok(Self {
            n,
            k,
            cells,
            bound,
            values,
            order,
            rank,
            spread,
            radix,
            edge_box,
            back,
            edges_after,
            zero_value,
        })
    }

    fn value_index(&self, c: &[i64]) -> Option<u32> {
        let side = 2 * self.bound + 1;
        let mut idx = 0i64;
        for &x in &c[..self.n] {
            if x.abs() > self.bound {
                return None;
            }
            idx = idx * side + x + self.bound;
        }
        Some(idx as u32)
    }

    fn edge_index(&self, c: &[i64]) -> Option<usize> {
        let reach = 2 * self.bound + 1;
        let mut idx = 0i64;
        for &x in c {
            if x.abs() > reach {
                return None;
            }
            idx = idx * self.radix + x + reach;
        }
        Some(idx as usize)
    }

    fn edge_coords(&self, mut e: usize) -> LatticeVector {
        let mut c = vec![0i64; self.n];
        for x in c.iter_mut().rev() {
            *x = (e as i64 % self.radix) - (2 * self.bound + 1);
            e /= self.radix as usize;
        }
        LatticeVector::new(c)
    }

    #[inline]
    fn edge(&self, fv: u32, fu: u32, shift: i64) -> usize {
        (self.spread[fv as usize] - self.spread[fu as usize] + shift) as usize
    }

    fn to_set(&self, assign: &[u32]) -> DiscreteNSet {
        let shifts = assign
            .iter()
            .map(|&v| LatticeVector::new(self.values[v as usize][..self.n].to_vec()))
            .collect();
        DiscreteNSet::new(self.n, self.k, shifts).expect("layout dimensions are valid")
    }
}

/// Node accounting against a shared budget, flushed in batches.
struct Budget<'a> {
    used: &'a AtomicU64,
    limit: u64,
    local: u64,
}

impl Budget<'_> {
    const BATCH: u64 = 4096;

    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == Self::BATCH {
            self.local = 0;
            self.used.fetch_add(Self::BATCH, Ordering::Relaxed) + Self::BATCH <= self.limit
        } else {
            true
        }
    }
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn split_target(threads: usize) -> usize {
    let t = if threads == 0 { rayon::current_num_threads() } else { threads };
    (16 * t).max(64)
}

/// The target set in edge-index form.
struct Target {
    members: Vec<[i64; MAX_DIM]>,
    allowed: Vec<bool>,
    /// `± pair` id of each allowed nonzero edge index.
    pair_of: Vec<u32>,
    pairs: usize,
    /// Some nonzero member cannot occur as an edge value inside the box.
    unreachable: bool,
}

const NO_PAIR: u32 = u32::MAX;

enum Outcome {
    Found(Vec<u32>),
    Exhausted,
    Limit,
    Cancelled,
}

struct WitnessSearch<'a> {
    layout: &'a Layout,
    target: &'a Target,
    exact: bool,
}

struct WitnessState<'a> {
    assign: Vec<u32>,
    cover: Vec<u32>,
    missing: usize,
    budget: Budget<'a>,
    index: usize,
    best: &'a AtomicUsize,
    stop: &'a AtomicBool,
}

impl WitnessSearch<'_> {
    /// Translates for cell `v` consistent with its first earlier neighbour,
    /// in search order.
    fn candidates(&self, assign: &[u32], v: usize, out: &mut Vec<(u32, u32)>) {
        let l = self.layout;
        out.clear();
        let (u, w, _) = &l.back[v][0];
        let fu = &l.values[assign[*u as usize] as usize];
        let mut c = [0i64; MAX_DIM];
        for a in &self.target.members {
            for i in 0..l.n {
                c[i] = fu[i] - w[i] + a[i];
            }
            if let Some(x) = l.value_index(&c) {
                out.push((l.rank[x as usize], x));
            }
        }
        out.sort_unstable();
    }

    fn consistent(&self, assign: &[u32], v: usize, fv: u32) -> bool {
        let l = self.layout;
        l.back[v][1..]
            .iter()
            .all(|&(u, _, shift)| self.target.allowed[l.edge(fv, assign[u as usize], shift)])
    }

    fn apply(&self, st: &mut WitnessState, v: usize, fv: u32, delta: i32) {
        st.assign[v] = fv;
        if !self.exact {
            return;
        }
        let l = self.layout;
        for &(u, _, shift) in &l.back[v] {
            let p = self.target.pair_of[l.edge(fv, st.assign[u as usize], shift)];
            if p == NO_PAIR {
                continue;
            }
            let slot = &mut st.cover[p as usize];
            if delta > 0 {
                if *slot == 0 {
                    st.missing -= 1;
                }
                *slot += 1;
            } else {
                *slot -= 1;
                if *slot == 0 {
                    st.missing += 1;
                }
            }
        }
    }

    fn dfs(&self, st: &mut WitnessState, v: usize) -> Outcome {
        let l = self.layout;
        if v == l.cells {
            return if st.missing == 0 {
                Outcome::Found(st.assign.clone())
            } else {
                Outcome::Exhausted
            };
        }
        let mut cands = Vec::new();
        self.candidates(&st.assign, v, &mut cands);
        for (_, fv) in cands {
            if !self.consistent(&st.assign, v, fv) {
                continue;
            }
            if !st.budget.tick() {
                st.stop.store(true, Ordering::Relaxed);
                return Outcome::Limit;
            }
            if st.budget.local == 0
                && (st.best.load(Ordering::Relaxed) < st.index || st.stop.load(Ordering::Relaxed))
            {
                return Outcome::Cancelled;
            }
            self.apply(st, v, fv, 1);
            if !(self.exact && st.missing > l.edges_after[v]) {
                match self.dfs(st, v + 1) {
                    Outcome::Exhausted => {}
                    other => {
                        self.apply(st, v, fv, -1);
                        return other;
                    }
                }
            }
            self.apply(st, v, fv, -1);
        }
        Outcome::Exhausted
    }

    /// All consistent assignments of cells `0..depth`, in search order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut assign = vec![0u32; self.layout.cells];
        assign[0] = self.layout.zero_value;
        self.collect(&mut assign, 1, depth, &mut out);
        out
    }

    fn collect(&self, assign: &mut Vec<u32>, v: usize, depth: usize, out: &mut Vec<Vec<u32>>) {
        if v == depth {
            out.push(assign[..depth].to_vec());
            return;
        }
        let mut cands = Vec::new();
        self.candidates(assign, v, &mut cands);
        for (_, fv) in cands {
            if self.consistent(assign, v, fv) {
                assign[v] = fv;
                self.collect(assign, v + 1, depth, out);
            }
        }
    }
}

impl Target {
    fn new(layout: &Layout, set: &SymmetricSet) -> Self {
        let mut allowed = vec![false; layout.edge_box];
        let mut pair_of = vec![NO_PAIR; layout.edge_box];
        let mut members = Vec::new();
        let mut pairs = 0;
        let mut unreachable = false;
        for a in set.iter() {
            let Some(e) = layout.edge_index(a.coords()) else {
                unreachable |= !a.is_zero();
                continue;
            };
            let mut c = [0i64; MAX_DIM];
            c[..layout.n].copy_from_slice(a.coords());
            members.push(c);
            allowed[e] = true;
            if a.is_positive() {
                let neg = layout.edge_index((-a).coords()).expect("box is symmetric");
                pair_of[e] = pairs;
                pair_of[neg] = pairs;
                pairs += 1;
            }
        }
        Self {
            members,
            allowed,
            pair_of,
            pairs: pairs as usize,
            unreachable,
        }
    }
}

/// Searches for an exactly `cfg.k`-discrete witness for `set`.
///
/// Returns the first witness in search order, the same for every thread
/// count, or `None` once the bounded space is exhausted. `None` says nothing
/// about achievability at other resolutions or bounds.
pub fn find_witness(set: &SymmetricSet, cfg: &SearchConfig) -> Result<Option<DiscreteNSet>> {
    let n = set.n();
    let layout = Layout::new(n, cfg.k, cfg.bound)?;
    let target = Target::new(&layout, set);
    let exact = cfg.mode == Mode::Exact;
    if exact && (target.unreachable || target.pairs > layout.edges_after[0]) {
        return Ok(None);
    }
    let search = WitnessSearch {
        layout: &layout,
        target: &target,
        exact,
    };
    let goal = split_target(cfg.threads);
    let mut depth = 1;
    let mut prefixes = search.prefixes(depth);
    while depth < layout.cells && prefixes.len() < goal && !prefixes.is_empty() {
        depth += 1;
        prefixes = search.prefixes(depth);
    }

    let used = AtomicU64::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let stop = AtomicBool::new(false);
    let run = |(index, prefix): (usize, &Vec<u32>)| -> Outcome {
        if best.load(Ordering::Relaxed) < index {
            return Outcome::Cancelled;
        }
        let mut st = WitnessState {
            assign: vec![0; layout.cells],
            cover: vec![0; target.pairs],
            missing: if exact { target.pairs } else { 0 },
            budget: Budget {
                used: &used,
                limit: cfg.node_limit,
                local: 0,
            },
            index,
            best: &best,
            stop: &stop,
        };
        for (v, &fv) in prefix.iter().enumerate() {
            search.apply(&mut st, v, fv, 1);
        }
        if exact && st.missing > layout.edges_after[depth - 1] {
            return Outcome::Exhausted;
        }
        let out = search.dfs(&mut st, depth);
        if matches!(out, Outcome::Found(_)) {
            best.fetch_min(index, Ordering::Relaxed);
        }
        out
    };
    let outcomes: Vec<Outcome> = with_pool(cfg.threads, || prefixes.par_iter().enumerate().map(run).collect());

    for out in outcomes {
        match out {
            Outcome::Found(assign) => {
                let witness = layout.to_set(&assign);
                verify(&witness, set, cfg.mode);
                return Ok(Some(witness));
            }
            Outcome::Exhausted => {}
            // a stop was raised by the budget before an earlier subtree finished
            Outcome::Limit | Outcome::Cancelled => return Err(Error::NodeLimit(cfg.node_limit)),
        }
    }
    Ok(None)
}

fn verify(witness: &DiscreteNSet, set: &SymmetricSet, mode: Mode) {
    let achieved = witness.achieved_set();
    let ok = match mode {
        Mode::Subset => achieved.is_subset(set),
        Mode::Exact => &achieved == set,
    };
    assert!(ok, "search returned {achieved} for target {set} ({mode:?})");
}

/// What happened at one resolution during [`decide`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub k: usize,
    pub bound: i64,
    /// `exhausted`, `node-limit`, or `skipped: <reason>`.
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Achieved {
        k: usize,
        witness: DiscreteNSet,
    },
    RefutedNecessary {
        reason: String,
        report: NecessaryReport,
    },
    RefutedObstruction {
        certificate: Decomposition,
    },
    /// No decision within the explored frontier.
    Unknown {
        frontier: Vec<Attempt>,
        notes: Vec<String>,
    },
}

impl Verdict {
    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::Unknown { .. })
    }
}

/// Necessary conditions, then (in the plane) the obstruction search, then
/// exact witness searches for `k = 3..=k_max` at `cfg.bound`.
pub fn decide(set: &SymmetricSet, k_max: usize, cfg: &SearchConfig) -> Verdict {
    let report = necessary_report(set);
    let mut notes = Vec::new();
    match &report.verdict {
        NecessaryVerdict::NotAchievable { failed } => {
            return Verdict::RefutedNecessary {
                reason: failed.clone(),
                report,
            }
        }
        NecessaryVerdict::Achievable { reason } => notes.push(format!("achievable: {reason}")),
        NecessaryVerdict::Inconclusive => {}
    }
    if set.n() == 2 {
        match obstruction_search(set) {
            Ok(Some(certificate)) => return Verdict::RefutedObstruction { certificate },
            Ok(None) => notes.push("no obstruction certificate exists".into()),
            Err(e) => notes.push(format!("obstruction search skipped: {e}")),
        }
    }
    let mut frontier = Vec::new();
    for k in 3..=k_max {
        let cfg = SearchConfig {
            k,
            mode: Mode::Exact,
            ..cfg.clone()
        };
        let outcome = match find_witness(set, &cfg) {
            Ok(Some(witness)) => return Verdict::Achieved { k, witness },
            Ok(None) => "exhausted".to_string(),
            Err(Error::NodeLimit(_)) => "node-limit".to_string(),
            Err(e) => format!("skipped: {e}"),
        };
        frontier.push(Attempt {
            k,
            bound: cfg.bound,
            outcome,
        });
    }
    Verdict::Unknown { frontier, notes }
}

/// One distinct achieved set with the first map found to achieve it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub set: SymmetricSet,
    pub witness: DiscreteNSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    /// Sorted by achieved set.
    pub entries: Vec<CatalogEntry>,
    /// False when the node limit stopped the enumeration early.
    pub complete: bool,
    /// Number of complete maps examined.
    pub admitted: u64,
}

struct CatalogSearch<'a> {
    layout: &'a Layout,
    words: usize,
    neg: Vec<usize>,
}

struct CatalogState<'a> {
    assign: Vec<u32>,
    /// Bitset of achieved edge values for each depth.
    bits: Vec<u64>,
    found: HashMap<Box<[u64]>, Vec<u32>>,
    admitted: u64,
    budget: Budget<'a>,
}

impl CatalogSearch<'_> {
    fn dfs(&self, st: &mut CatalogState, v: usize) -> bool {
        let l = self.layout;
        let w = self.words;
        if v == l.cells {
            st.admitted += 1;
            let key = &st.bits[v * w..(v + 1) * w];
            if !st.found.contains_key(key) {
                st.found.insert(key.into(), st.assign.clone());
            }
            return true;
        }
        for &fv in &l.order {
            if !st.budget.tick() {
                return false;
            }
            st.assign[v] = fv;
            let (head, tail) = st.bits.split_at_mut((v + 1) * w);
            let next = &mut tail[..w];
            next.copy_from_slice(&head[v * w..]);
            for &(u, _, shift) in &l.back[v] {
                let e = l.edge(fv, st.assign[u as usize], shift);
                next[e / 64] |= 1 << (e % 64);
                let ne = self.neg[e];
                next[ne / 64] |= 1 << (ne % 64);
            }
            if !self.dfs(st, v + 1) {
                return false;
            }
        }
        true
    }
}

/// Every distinct achieved set of maps with `f(0) = 0` and `|f| ≤ bound`
/// at resolution `k`, with one witness each.
pub fn catalog(n: usize, k: usize, bound: i64, node_limit: u64, threads: usize) -> Result<Catalog> {
    let layout = Layout::new(n, k, bound)?;
    let words = layout.edge_box.div_ceil(64);
    let neg: Vec<usize> = (0..layout.edge_box).map(|e| layout.edge_box - 1 - e).collect();
    let search = CatalogSearch {
        layout: &layout,
        words,
        neg,
    };
    let mut base = vec![0u64; words];
    let zero = layout.edge_box / 2;
    base[zero / 64] |= 1 << (zero % 64);

    // split on all assignments of the first few cells
    let goal = split_target(threads);
    let mut depth = 1;
    let mut count = 1usize;
    while depth < layout.cells && count < goal {
        depth += 1;
        count *= layout.order.len();
    }
    let prefix_of = |mut idx: usize| -> Vec<u32> {
        let mut p = vec![layout.zero_value; depth];
        for v in (1..depth).rev() {
            p[v] = layout.order[idx % layout.order.len()];
            idx /= layout.order.len();
        }
        p
    };

    let used = AtomicU64::new(0);
    let run = |idx: usize| -> (HashMap<Box<[u64]>, Vec<u32>>, u64, bool) {
        let mut st = CatalogState {
            assign: vec![0; layout.cells],
            bits: vec![0; (layout.cells + 1) * words],
            found: HashMap::new(),
            admitted: 0,
            budget: Budget {
                used: &used,
                limit: node_limit,
                local: 0,
            },
        };
        st.bits[words..2 * words].copy_from_slice(&base);
        st.assign[0] = layout.zero_value;
        for (v, fv) in prefix_of(idx).into_iter().enumerate().skip(1) {
            st.assign[v] = fv;
            let (head, tail) = st.bits.split_at_mut((v + 1) * words);
            let next = &mut tail[..words];
            next.copy_from_slice(&head[v * words..]);
            for &(u, _, shift) in &layout.back[v] {
                let e = layout.edge(fv, st.assign[u as usize], shift);
                next[e / 64] |= 1 << (e % 64);
                let ne = search.neg[e];
                next[ne / 64] |= 1 << (ne % 64);
            }
        }
        let done = search.dfs(&mut st, depth);
        (st.found, st.admitted, done)
    };
    let parts: Vec<_> = with_pool(threads, || (0..count).into_par_iter().map(run).collect());

    let mut merged: HashMap<Box<[u64]>, Vec<u32>> = HashMap::new();
    let mut admitted = 0;
    let mut complete = true;
    for (found, a, done) in parts {
        admitted += a;
        complete &= done;
        for (key, assign) in found {
            merged.entry(key).or_insert(assign);
        }
    }
    let mut entries: Vec<CatalogEntry> = merged
        .into_iter()
        .map(|(key, assign)| {
            let members: Vec<LatticeVector> = (0..layout.edge_box)
                .filter(|&e| key[e / 64] >> (e % 64) & 1 == 1)
                .map(|e| layout.edge_coords(e))
                .collect();
            let set = SymmetricSet::normalize(n, &members).expect("dimension");
            let witness = layout.to_set(&assign);
            debug_assert_eq!(witness.achieved_set(), set);
            CatalogEntry { set, witness }
        })
        .collect();
    entries.sort_by(|a, b| a.set.cmp(&b.set));
    Ok(Catalog {
        entries,
        complete,
        admitted,
    })
}
