//! Exact branch-and-bound and greedy search for maximum cancellative,
//! strongly cancellative and recovering sets.
//!
//! Sets are built from points in canonical order with strictly increasing
//! indices. All three properties are hereditary, so after adding a point the
//! remaining candidates are filtered down to those still compatible with the
//! enlarged set, and a node is pruned as soon as
//! `|S| + |candidates| <= best`.
//!
//! Feasibility is incremental. For the triple conditions each member keeps
//! the list of values it attains with the other members; a candidate `c` is
//! compatible when no `a ∧ c` already appears in `a`'s list and the values
//! `{c ∧ a}` are pairwise distinct (dually for join). For recovering sets one
//! global mark array per operation holds every unordered-pair value, and the
//! new values must avoid it and each other.
//!
//! Parallel runs split the tree at its second level. Workers share only the
//! monotone best size, a node counter and a stop flag.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::lattice::{ChainProduct, Indexer, LatticeOp, PointSet, DEFAULT_ENUMERATION_CAP};
use crate::verifier::{self, Property};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Lattices up to this many points get precomputed meet/join tables.
const TABLE_LIMIT: usize = 1 << 10;

const FLUSH_EVERY: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exact,
    Greedy,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SearchMode::Exact),
            "greedy" => Ok(SearchMode::Greedy),
            _ => Err(Error::InvalidParameter(format!("unknown search mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub lattice: ChainProduct,
    pub property: Property,
    pub mode: SearchMode,
    pub threads: usize,
    /// Defaults to [`DEFAULT_NODE_BUDGET`].
    pub node_budget: Option<u64>,
    pub seed: Option<PointSet>,
    /// Re-run single-threaded after a parallel exact search so the reported
    /// set is the lexicographically first maximum set.
    pub canonical_witness: bool,
    pub progress_interval: Option<Duration>,
    pub enumeration_cap: u64,
}

impl SearchConfig {
    pub fn new(lattice: ChainProduct, property: Property) -> Self {
        SearchConfig {
            lattice,
            property,
            mode: SearchMode::Exact,
            threads: 1,
            node_budget: None,
            seed: None,
            canonical_witness: true,
            progress_interval: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn node_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    pub fn seed(mut self, seed: PointSet) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn canonical_witness(mut self, canonical: bool) -> Self {
        self.canonical_witness = canonical;
        self
    }

    pub fn progress_interval(mut self, interval: Duration) -> Self {
        self.progress_interval = Some(interval);
        self
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best_set: PointSet,
    pub best_size: usize,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
}

pub fn run(config: &SearchConfig) -> Result<SearchResult> {
    match config.mode {
        SearchMode::Exact => exact_max(config),
        SearchMode::Greedy => greedy(config),
    }
}

/// Maximum set with the configured property. `proven_optimal` is false when
/// the node budget ran out; the best set found so far is still returned.
pub fn exact_max(config: &SearchConfig) -> Result<SearchResult> {
    let ctx = Context::new(config)?;
    let seed = ctx.seed_indices(config)?;
    let n = ctx.ops.len();

    // any set of at most two points qualifies; {0, 1} is the first in order
    let trivial: Vec<u32> = (0..n.min(2) as u32).collect();
    let incumbent = if seed.len() > trivial.len() { seed } else { trivial };

    let budget = config.node_budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let threads = config.threads.max(1);
    let outcome = ctx.branch_and_bound(incumbent, budget, threads, None, config.progress_interval);
    let mut best = outcome.best;
    let mut nodes = outcome.nodes;

    if threads > 1 && config.canonical_witness && !outcome.aborted && best.len() > 2 {
        let target = best.len();
        let rerun = ctx.branch_and_bound(
            (0..2).collect(),
            u64::MAX,
            1,
            Some(target),
            None,
        );
        nodes += rerun.nodes;
        if rerun.best.len() == target {
            best = rerun.best;
        }
    }

    let result = ctx.finish(&best, !outcome.aborted, nodes)?;
    Ok(result)
}

/// Scans points in canonical order and keeps each one that preserves the
/// property, starting from the seed if one is given.
pub fn greedy(config: &SearchConfig) -> Result<SearchResult> {
    let ctx = Context::new(config)?;
    let seed = ctx.seed_indices(config)?;
    let mut state = State::new(&ctx.ops, config.property);
    for &s in &seed {
        state.push(s);
    }
    let mut tested = 0u64;
    for c in 0..ctx.ops.len() as u32 {
        if seed.binary_search(&c).is_ok() {
            continue;
        }
        tested += 1;
        if state.can_add(c) {
            state.push(c);
        }
    }
    let mut members = state.members.clone();
    members.sort_unstable();
    let proven = bounds::known_maximum(&config.lattice, config.property) == Some(members.len() as u64);
    ctx.finish(&members, proven, tested)
}

struct Context<'a> {
    config: &'a SearchConfig,
    ops: Ops,
}

struct Outcome {
    best: Vec<u32>,
    nodes: u64,
    aborted: bool,
}

impl<'a> Context<'a> {
    fn new(config: &'a SearchConfig) -> Result<Self> {
        let count = config.lattice.point_count();
        if count > u128::from(config.enumeration_cap) || count > u128::from(u32::MAX) {
            return Err(Error::LatticeTooLarge {
                points: count,
                cap: config.enumeration_cap.min(u64::from(u32::MAX)),
            });
        }
        Ok(Context {
            config,
            ops: Ops::new(&config.lattice)?,
        })
    }

    fn seed_indices(&self, config: &SearchConfig) -> Result<Vec<u32>> {
        let Some(seed) = &config.seed else {
            return Ok(Vec::new());
        };
        if seed.lattice() != &config.lattice {
            return Err(Error::InvalidParameter(format!(
                "seed lives on {} but the search runs on {}",
                seed.lattice(),
                config.lattice
            )));
        }
        if !verifier::satisfies(seed, config.property) {
            return Err(Error::SeedViolatesProperty(config.property));
        }
        Ok(seed.iter().map(|p| self.ops.indexer.index_of(p) as u32).collect())
    }

    fn finish(&self, members: &[u32], proven_optimal: bool, nodes: u64) -> Result<SearchResult> {
        let points = members
            .iter()
            .map(|&i| self.ops.indexer.point_at(u64::from(i)))
            .collect();
        let best_set = PointSet::new(self.config.lattice.clone(), points)?;
        if !verifier::satisfies(&best_set, self.config.property) {
            return Err(Error::VerificationFailed);
        }
        Ok(SearchResult {
            best_size: best_set.len(),
            best_set,
            proven_optimal,
            nodes_explored: nodes,
        })
    }

    /// Runs the search from the incumbent. With `stop_at`, the search looks
    /// for the first set of exactly that size and stops there.
    fn branch_and_bound(
        &self,
        incumbent: Vec<u32>,
        budget: u64,
        threads: usize,
        stop_at: Option<usize>,
        progress: Option<Duration>,
    ) -> Outcome {
        let n = self.ops.len() as u32;
        let shared = Shared {
            best_size: AtomicUsize::new(match stop_at {
                Some(target) => target - 1,
                None => incumbent.len(),
            }),
            nodes: AtomicU64::new(0),
            budget,
            stop: AtomicBool::new(false),
            aborted: AtomicBool::new(false),
            next_item: Mutex::new((0, 1)),
            progress: progress.map(|interval| (interval, Mutex::new(Instant::now()))),
            stop_at,
        };
        let worker = || {
            let mut w = Worker::new(&self.ops, self.config.property, &shared);
            while let Some((i, j)) = shared.take_item(n) {
                if shared.stop.load(Ordering::Relaxed) {
                    break;
                }
                w.solve_item(i, j, n);
            }
            w.flush();
            w.best
        };
        let results: Vec<Vec<u32>> = if threads == 1 {
            vec![worker()]
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..threads).map(|_| scope.spawn(worker)).collect();
                handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
            })
        };
        let best = results
            .into_iter()
            .filter(|r| !r.is_empty())
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
            .filter(|found| found.len() > incumbent.len() || stop_at.is_some())
            .unwrap_or(incumbent);
        Outcome {
            best,
            nodes: shared.nodes.load(Ordering::Relaxed),
            aborted: shared.aborted.load(Ordering::Relaxed),
        }
    }
}

struct Shared {
    best_size: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    stop: AtomicBool,
    aborted: AtomicBool,
    next_item: Mutex<(u32, u32)>,
    progress: Option<(Duration, Mutex<Instant>)>,
    stop_at: Option<usize>,
}

impl Shared {
    /// Next second-level subproblem `{i, j}` in lexicographic order.
    fn take_item(&self, n: u32) -> Option<(u32, u32)> {
        let mut next = self.next_item.lock().expect("item cursor poisoned");
        loop {
            let (i, j) = *next;
            if i + 1 >= n {
                return None;
            }
            *next = if j + 1 < n { (i, j + 1) } else { (i + 1, i + 2) };
            let best = self.best_size.load(Ordering::Relaxed);
            // later items in this row have fewer candidates; skip the row
            if 2 + (n - 1 - j) as usize <= best {
                *next = (i + 1, i + 2);
                continue;
            }
            return Some((i, j));
        }
    }
}

struct Worker<'a> {
    state: State<'a>,
    shared: &'a Shared,
    levels: Vec<Vec<u32>>,
    best: Vec<u32>,
    pending_nodes: u64,
}

impl<'a> Worker<'a> {
    fn new(ops: &'a Ops, property: Property, shared: &'a Shared) -> Self {
        Worker {
            state: State::new(ops, property),
            shared,
            levels: Vec::new(),
            best: Vec::new(),
            pending_nodes: 0,
        }
    }

    fn solve_item(&mut self, i: u32, j: u32, n: u32) {
        self.state.push(i);
        self.state.push(j);
        let mut candidates = self.take_level(0);
        candidates.extend((j + 1..n).filter(|&c| self.state.can_add(c)));
        self.visit(candidates, 0);
        self.state.pop();
        self.state.pop();
    }

    fn take_level(&mut self, depth: usize) -> Vec<u32> {
        if self.levels.len() <= depth {
            self.levels.resize_with(depth + 1, Vec::new);
        }
        let mut v = std::mem::take(&mut self.levels[depth]);
        v.clear();
        v
    }

    fn visit(&mut self, candidates: Vec<u32>, depth: usize) {
        if !self.count_node() {
            self.levels[depth] = candidates;
            return;
        }
        let size = self.state.len();
        if size > self.shared.best_size.load(Ordering::Relaxed) {
            self.record();
        }
        for (pos, &c) in candidates.iter().enumerate() {
            let remaining = candidates.len() - pos;
            if size + remaining <= self.shared.best_size.load(Ordering::Relaxed)
                || self.shared.stop.load(Ordering::Relaxed)
            {
                break;
            }
            self.state.push(c);
            let mut next = self.take_level(depth + 1);
            next.extend(candidates[pos + 1..].iter().copied().filter(|&x| self.state.can_add(x)));
            if size + 1 + next.len() > self.shared.best_size.load(Ordering::Relaxed) {
                self.visit(next, depth + 1);
            } else {
                if size + 1 > self.shared.best_size.load(Ordering::Relaxed) {
                    self.record();
                }
                self.levels[depth + 1] = next;
            }
            self.state.pop();
        }
        self.levels[depth] = candidates;
    }

    fn record(&mut self) {
        let size = self.state.len();
        let previous = self.shared.best_size.fetch_max(size, Ordering::Relaxed);
        if size > previous || (size == previous && self.best.len() < size && self.shared.stop_at.is_none()) {
            self.best.clear();
            self.best.extend_from_slice(&self.state.members);
            self.best.sort_unstable();
        }
        if self.shared.stop_at == Some(size) && size > previous {
            self.shared.stop.store(true, Ordering::Relaxed);
        }
    }

    /// Counts one node; false once the budget is spent.
    fn count_node(&mut self) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes >= FLUSH_EVERY {
            self.flush();
        }
        !self.shared.aborted.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        let total = self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed) + self.pending_nodes;
        self.pending_nodes = 0;
        if total > self.shared.budget {
            self.shared.aborted.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
        }
        if let Some((interval, last)) = &self.shared.progress {
            if let Ok(mut last) = last.try_lock() {
                if last.elapsed() >= *interval {
                    *last = Instant::now();
                    eprintln!(
                        "search: nodes={} best={}",
                        total,
                        self.shared.best_size.load(Ordering::Relaxed)
                    );
                }
            }
        }
    }
}

/// Meet and join on point indices.
struct Ops {
    indexer: Indexer,
    len: usize,
    tables: Option<[Vec<u32>; 2]>,
}

impl Ops {
    fn new(lattice: &ChainProduct) -> Result<Self> {
        let indexer = lattice.indexer()?;
        let len = indexer.count() as usize;
        let tables = (len <= TABLE_LIMIT && !lattice.is_boolean()).then(|| {
            LatticeOp::BOTH.map(|op| {
                (0..len as u64)
                    .flat_map(|a| (0..len as u64).map(move |b| (a, b)))
                    .map(|(a, b)| indexer.apply(op, a, b) as u32)
                    .collect()
            })
        });
        Ok(Ops { indexer, len, tables })
    }

    fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn apply(&self, op: LatticeOp, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t[op as usize][a as usize * self.len + b as usize],
            None => self.indexer.apply(op, u64::from(a), u64::from(b)) as u32,
        }
    }
}

/// Incremental feasibility state for one growing set.
struct State<'a> {
    ops: &'a Ops,
    ops_checked: &'static [LatticeOp],
    recovering: bool,
    members: Vec<u32>,
    /// Per member and operation, the values it attains with other members,
    /// in insertion order.
    anchored: Vec<[Vec<u32>; 2]>,
    /// Recovering only: every unordered-pair value, per operation.
    pair_marks: [Vec<bool>; 2],
    scratch: Vec<u32>,
}

impl<'a> State<'a> {
    fn new(ops: &'a Ops, property: Property) -> Self {
        let recovering = property == Property::Recovering;
        let marks = if recovering { ops.len() } else { 0 };
        State {
            ops,
            ops_checked: property.ops(),
            recovering,
            members: Vec::new(),
            anchored: Vec::new(),
            pair_marks: [vec![false; marks], vec![false; marks]],
            scratch: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn can_add(&mut self, c: u32) -> bool {
        for &op in self.ops_checked {
            self.scratch.clear();
            for (m, &a) in self.members.iter().enumerate() {
                let v = self.ops.apply(op, a, c);
                let clash = if self.recovering {
                    self.pair_marks[op as usize][v as usize]
                } else {
                    self.anchored[m][op as usize].contains(&v)
                };
                if clash || self.scratch.contains(&v) {
                    return false;
                }
                self.scratch.push(v);
            }
        }
        true
    }

    fn push(&mut self, c: u32) {
        let mut own: [Vec<u32>; 2] = Default::default();
        for op in LatticeOp::BOTH {
            let k = op as usize;
            for (m, &a) in self.members.iter().enumerate() {
                let v = self.ops.apply(op, a, c);
                self.anchored[m][k].push(v);
                own[k].push(v);
                if self.recovering {
                    self.pair_marks[k][v as usize] = true;
                }
            }
        }
        self.anchored.push(own);
        self.members.push(c);
    }

    fn pop(&mut self) {
        self.members.pop();
        let own = self.anchored.pop().expect("pop on empty state");
        for (k, values) in own.iter().enumerate() {
            for lists in &mut self.anchored {
                lists[k].pop();
            }
            if self.recovering {
                for &v in values {
                    self.pair_marks[k][v as usize] = false;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::block_construction;

    fn exact(lattice: &str, property: Property) -> SearchResult {
        exact_max(&SearchConfig::new(lattice.parse().unwrap(), property)).unwrap()
    }

    #[test]
    fn small_boolean_maxima() {
        let sc = Property::StronglyCancellative;
        for (n, expected) in [(2, 2), (3, 2), (4, 4)] {
            let r = exact(&format!("b:{n}"), sc);
            assert_eq!(r.best_size, expected, "n = {n}");
            assert!(r.proven_optimal);
        }
        assert_eq!(exact("b:2", Property::Recovering).best_size, 2);
        assert_eq!(exact("d:3,3", sc).best_size, 3);
    }

    #[test]
    fn tiny_lattices() {
        let r = exact("d:1", Property::Recovering);
        assert_eq!(r.best_size, 1);
        assert!(r.proven_optimal);
        let r = exact("d:2", Property::StronglyCancellative);
        assert_eq!(r.best_size, 2);
        // a chain of three points: any anchor's meets collide
        assert_eq!(exact("d:3", Property::Cancellative).best_size, 2);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let config = SearchConfig::new("b:4".parse().unwrap(), Property::Cancellative).node_budget(1);
        let r = exact_max(&config).unwrap();
        assert!(!r.proven_optimal);
        assert!(verifier::is_cancellative(&r.best_set));
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let mut config = SearchConfig::new("b:6".parse().unwrap(), Property::Recovering);
        config.enumeration_cap = 32;
        assert!(matches!(exact_max(&config), Err(Error::LatticeTooLarge { .. })));
    }

    #[test]
    fn seed_must_satisfy_property() {
        let b4: ChainProduct = "b:4".parse().unwrap();
        let block = block_construction(4).unwrap();
        let config = SearchConfig::new(b4.clone(), Property::Recovering).seed(block.clone());
        assert!(matches!(exact_max(&config), Err(Error::SeedViolatesProperty(_))));
        let config = SearchConfig::new("b:5".parse().unwrap(), Property::StronglyCancellative).seed(block);
        assert!(exact_max(&config).is_err());
    }

    #[test]
    fn greedy_keeps_seed_and_verifies() {
        let b4: ChainProduct = "b:4".parse().unwrap();
        let block = block_construction(4).unwrap();
        let config = SearchConfig::new(b4.clone(), Property::StronglyCancellative)
            .mode(SearchMode::Greedy)
            .seed(block.clone());
        let r = greedy(&config).unwrap();
        assert!(block.iter().all(|p| r.best_set.contains(p)));
        assert_eq!(r.best_size, 4);
        assert!(r.proven_optimal);

        let r = greedy(&SearchConfig::new(b4, Property::StronglyCancellative)).unwrap();
        assert!(r.best_size <= 4);
        assert!(verifier::is_strongly_cancellative(&r.best_set));
    }

    #[test]
    fn state_push_pop_restores() {
        let lattice: ChainProduct = "d:3,3".parse().unwrap();
        let ops = Ops::new(&lattice).unwrap();
        for property in Property::ALL {
            let mut state = State::new(&ops, property);
            state.push(2);
            state.push(4);
            let before: Vec<bool> = (0..9).map(|c| state.can_add(c)).collect();
            state.push(6);
            state.pop();
            let after: Vec<bool> = (0..9).map(|c| state.can_add(c)).collect();
            assert_eq!(before, after);
        }
    }
}
