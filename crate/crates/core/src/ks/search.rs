//! Exhaustive searches over {0,1} valuations of a context hypergraph.
//!
//! Both searches walk vertices in index order and try 0 before 1, so the
//! first hit is the lexicographically smallest one. Parallel runs split the
//! space on the first few vertices and merge results in prefix order, which
//! keeps every answer identical to the single-worker run.

use std::sync::atomic::{AtomicI64, AtomicUsize, Ordering};
use std::sync::Mutex;

use super::hypergraph::{Assignment, ContextHypergraph};
use crate::error::{Error, Result};

pub const DEFAULT_SEARCH_CAP: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest vertex count accepted.
    pub cap: usize,
    /// Worker threads; 0 and 1 both mean a single sequential pass.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cap: DEFAULT_SEARCH_CAP,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_workers(workers: usize) -> Self {
        SearchConfig {
            workers,
            ..Self::default()
        }
    }

    fn check(&self, h: &ContextHypergraph) -> Result<()> {
        if h.vertex_count() > self.cap {
            Err(Error::SearchBudgetExceeded {
                vertices: h.vertex_count(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    fn prefix_len(&self, n: usize) -> usize {
        if self.workers <= 1 {
            return 0;
        }
        // A few tasks per worker so uneven subtrees still balance.
        let tasks = (self.workers * 8).next_power_of_two();
        (tasks.trailing_zeros() as usize).min(n)
    }
}

/// Incremental per-edge bookkeeping for a partial valuation.
struct Partial<'a> {
    incidence: &'a [Vec<usize>],
    values: Vec<bool>,
    ones: Vec<usize>,
    unassigned: Vec<usize>,
}

impl<'a> Partial<'a> {
    fn new(h: &ContextHypergraph, incidence: &'a [Vec<usize>]) -> Self {
        Partial {
            incidence,
            values: vec![false; h.vertex_count()],
            ones: vec![0; h.edges().len()],
            unassigned: h.edges().iter().map(Vec::len).collect(),
        }
    }

    fn set(&mut self, v: usize, bit: bool) {
        self.values[v] = bit;
        for &e in &self.incidence[v] {
            self.unassigned[e] -= 1;
            if bit {
                self.ones[e] += 1;
            }
        }
    }

    fn unset(&mut self, v: usize) {
        let bit = self.values[v];
        for &e in &self.incidence[v] {
            self.unassigned[e] += 1;
            if bit {
                self.ones[e] -= 1;
            }
        }
        self.values[v] = false;
    }

    /// Whether setting `v` keeps every incident edge able to end with exactly
    /// one 1.
    fn admits_coloring(&self, v: usize, bit: bool) -> bool {
        self.incidence[v].iter().all(|&e| {
            if bit {
                self.ones[e] == 0
            } else {
                self.ones[e] > 0 || self.unassigned[e] > 1
            }
        })
    }
}

fn prefix_bits(index: usize, len: usize) -> impl Iterator<Item = (usize, bool)> {
    (0..len).map(move |k| (k, (index >> (len - 1 - k)) & 1 == 1))
}

/// Runs `task(i)` for `i in 0..count` across `workers` threads and returns
/// the results in task order. `skip(i)` is consulted before a task starts.
fn run_tasks<T, F, S>(count: usize, workers: usize, task: F, skip: S) -> Vec<Option<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
    S: Fn(usize) -> bool + Sync,
{
    let slots: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= count {
            break;
        }
        if !skip(i) {
            let out = task(i);
            *slots[i].lock().unwrap() = Some(out);
        }
    };
    let workers = workers.clamp(1, count.max(1));
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    slots.into_iter().map(|m| m.into_inner().unwrap()).collect()
}

/// Finds a valuation with exactly one 1 in every edge, or proves none exists.
pub fn find_noncontextual_assignment(
    h: &ContextHypergraph,
    cfg: &SearchConfig,
) -> Result<Option<Assignment>> {
    cfg.check(h)?;
    let n = h.vertex_count();
    let incidence = h.incidence();
    let k = cfg.prefix_len(n);
    // Smallest prefix index that has produced a coloring so far.
    let found = AtomicUsize::new(usize::MAX);

    let task = |prefix: usize| -> Option<Assignment> {
        let mut p = Partial::new(h, &incidence);
        for (v, bit) in prefix_bits(prefix, k) {
            if !p.admits_coloring(v, bit) {
                return None;
            }
            p.set(v, bit);
        }
        let hit = color_dfs(&mut p, k, n).then(|| Assignment::new(p.values.clone()));
        if hit.is_some() {
            found.fetch_min(prefix, Ordering::Relaxed);
        }
        hit
    };
    let results = run_tasks(1 << k, cfg.workers, task, |i| {
        i > found.load(Ordering::Relaxed)
    });
    Ok(results.into_iter().flatten().flatten().next())
}

fn color_dfs(p: &mut Partial<'_>, v: usize, n: usize) -> bool {
    if v == n {
        return true;
    }
    for bit in [false, true] {
        if p.admits_coloring(v, bit) {
            p.set(v, bit);
            if color_dfs(p, v + 1, n) {
                return true;
            }
            p.unset(v);
        }
    }
    false
}

/// Maximizes `sign * sum_j (-1)^(ones in edge j)` over all valuations.
///
/// Branch and bound: an edge that still has unassigned vertices can add at
/// most 1, so `closed + open` bounds every completion. Returns the optimum
/// and the lexicographically smallest valuation attaining it.
pub fn maximize_parity_sum(
    h: &ContextHypergraph,
    sign: i64,
    cfg: &SearchConfig,
) -> Result<(i64, Assignment)> {
    cfg.check(h)?;
    let n = h.vertex_count();
    let incidence = h.incidence();
    let k = cfg.prefix_len(n);
    let shared_best = AtomicI64::new(i64::MIN);

    let task = |prefix: usize| -> Option<(i64, Assignment)> {
        let mut search = BoundSearch {
            p: Partial::new(h, &incidence),
            sign,
            n,
            closed: 0,
            open: h.edges().len() as i64,
            best: None,
            shared_best: &shared_best,
        };
        for (v, bit) in prefix_bits(prefix, k) {
            search.assign(v, bit);
        }
        search.dfs(k);
        search.best
    };
    let results = run_tasks(1 << k, cfg.workers, task, |_| false);

    let mut best: Option<(i64, Assignment)> = None;
    for (value, arg) in results.into_iter().flatten().flatten() {
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, arg));
        }
    }
    Ok(best.expect("at least one task explores its subtree"))
}

struct BoundSearch<'a> {
    p: Partial<'a>,
    sign: i64,
    n: usize,
    closed: i64,
    open: i64,
    best: Option<(i64, Assignment)>,
    shared_best: &'a AtomicI64,
}

impl BoundSearch<'_> {
    fn edge_term(&self, e: usize) -> i64 {
        if self.p.ones[e].is_multiple_of(2) {
            self.sign
        } else {
            -self.sign
        }
    }

    fn assign(&mut self, v: usize, bit: bool) {
        self.p.set(v, bit);
        for i in 0..self.p.incidence[v].len() {
            let e = self.p.incidence[v][i];
            if self.p.unassigned[e] == 0 {
                self.closed += self.edge_term(e);
                self.open -= 1;
            }
        }
    }

    fn retract(&mut self, v: usize) {
        for i in 0..self.p.incidence[v].len() {
            let e = self.p.incidence[v][i];
            if self.p.unassigned[e] == 0 {
                self.closed -= self.edge_term(e);
                self.open += 1;
            }
        }
        self.p.unset(v);
    }

    fn dfs(&mut self, v: usize) {
        let bound = self.closed + self.open;
        if let Some((local, _)) = &self.best {
            if bound <= *local {
                return;
            }
        }
        // Strict: a tie found in a later prefix must not hide an earlier one.
        if bound < self.shared_best.load(Ordering::Relaxed) {
            return;
        }
        if v == self.n {
            self.shared_best.fetch_max(self.closed, Ordering::Relaxed);
            self.best = Some((self.closed, Assignment::new(self.p.values.clone())));
            return;
        }
        for bit in [false, true] {
            self.assign(v, bit);
            self.dfs(v + 1);
            self.retract(v);
        }
    }
}
