//! Brute-force `ex(p; T)` for small `p` by branch and bound over edge sets.
//!
//! Search layout: vertex 0 is a vertex of maximum degree `D` and its
//! neighbours are `1..=D` (any graph can be relabelled this way). For each
//! `D`, from large to small, the remaining slots `{u, v}` with `1 <= u < v`
//! are decided in lexicographic order, include first, with every degree
//! capped at `D`. Containment is monotone, so a branch is cut the moment an
//! inclusion creates a copy of the tree, and only copies through the new
//! edge need to be looked for.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::containment::{generic_backtrack, EdgeAnchoredSearch};
use crate::error::OracleError;
use crate::graph::{choose2, SimpleGraph};
use crate::io::to_graph6_string;
use crate::trees::TreeFamily;

/// Environment variable overriding [`Budget::max_nodes`].
pub const BUDGET_ENV: &str = "TURAN_BUDGET_NODES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

impl Budget {
    /// Default budget, with the node limit taken from `TURAN_BUDGET_NODES`
    /// when that parses as an integer.
    pub fn from_env() -> Self {
        let mut budget = Self::default();
        if let Some(nodes) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            budget.max_nodes = nodes;
        }
        budget
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub p: usize,
    /// Largest edge count found; the exact maximum when `exact` is set.
    pub value: u64,
    /// A tree-free graph on `p` vertices with `value` edges.
    #[serde(serialize_with = "as_graph6")]
    pub witness: SimpleGraph,
    pub nodes_explored: u64,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
    /// False when the budget ran out first; `value` is then a lower bound.
    pub exact: bool,
}

fn as_graph6<S: Serializer>(g: &SimpleGraph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_graph6_string(g))
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis().try_into().unwrap_or(u64::MAX))
}

/// `ex(p; f)` by exhaustive search, single-threaded and fully deterministic
/// (value, witness and node count).
pub fn ex_bruteforce(p: usize, f: &TreeFamily, budget: Budget) -> Result<OracleResult, OracleError> {
    run(p, f, budget, None)
}

/// As [`ex_bruteforce`], with subproblems spread over `threads` workers.
/// The value does not depend on `threads`; the witness and node count may.
pub fn ex_bruteforce_parallel(p: usize, f: &TreeFamily, budget: Budget, threads: usize) -> Result<OracleResult, OracleError> {
    if threads <= 1 {
        return run(p, f, budget, None);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| run(p, f, budget, Some(threads)))
}

/// One subproblem: a partial graph and the next slot to decide.
struct Task {
    cap: usize,
    graph: SimpleGraph,
    edges: u64,
    next_slot: usize,
}

struct Shared<'a> {
    slots: &'a [(usize, usize)],
    anchored: &'a EdgeAnchoredSearch,
    best: AtomicU64,
    nodes: AtomicU64,
    stop: AtomicBool,
    budget: Budget,
    started: Instant,
}

struct Worker<'a, 'b> {
    shared: &'b Shared<'a>,
    cap: usize,
    graph: SimpleGraph,
    degree: Vec<usize>,
    edges: u64,
    nodes: u64,
    unflushed: u64,
    best_local: Option<(u64, SimpleGraph)>,
}

const FLUSH_EVERY: u64 = 4096;

impl Worker<'_, '_> {
    fn new<'a, 'b>(shared: &'b Shared<'a>, task: &Task) -> Worker<'a, 'b> {
        let degree = (0..task.graph.order()).map(|v| task.graph.degree(v)).collect();
        Worker {
            shared,
            cap: task.cap,
            graph: task.graph.clone(),
            degree,
            edges: task.edges,
            nodes: 0,
            unflushed: 0,
            best_local: None,
        }
    }

    fn out_of_budget(&mut self) -> bool {
        if self.unflushed >= FLUSH_EVERY.min(self.shared.budget.max_nodes) {
            let total = self.shared.nodes.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
            self.unflushed = 0;
            if total >= self.shared.budget.max_nodes || self.shared.started.elapsed() >= self.shared.budget.max_time {
                self.shared.stop.store(true, Ordering::Relaxed);
            }
        }
        self.shared.stop.load(Ordering::Relaxed)
    }

    /// Edges still addable from slot `i` on, bounded by free slots and by
    /// spare degree capacity.
    fn headroom(&self, i: usize) -> u64 {
        let remaining_slots = (self.shared.slots.len() - i) as u64;
        let spare: usize = self.degree[1..].iter().map(|&d| self.cap - d).sum();
        remaining_slots.min(spare as u64 / 2)
    }

    fn search(&mut self, i: usize) {
        self.nodes += 1;
        self.unflushed += 1;
        if self.out_of_budget() {
            return;
        }
        if self.edges + self.headroom(i) <= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        if i == self.shared.slots.len() {
            self.record();
            return;
        }
        let (u, v) = self.shared.slots[i];
        if self.degree[u] < self.cap && self.degree[v] < self.cap {
            self.graph.insert_edge(u, v);
            if self.shared.anchored.find(&self.graph, u, v).is_none() {
                self.degree[u] += 1;
                self.degree[v] += 1;
                self.edges += 1;
                self.search(i + 1);
                self.edges -= 1;
                self.degree[u] -= 1;
                self.degree[v] -= 1;
            }
            self.graph.remove_edge(u, v);
        }
        self.search(i + 1);
    }

    fn record(&mut self) {
        if self.best_local.as_ref().is_none_or(|(value, _)| self.edges > *value) {
            self.best_local = Some((self.edges, self.graph.clone()));
        }
        self.shared.best.fetch_max(self.edges, Ordering::Relaxed);
    }
}

fn run(p: usize, f: &TreeFamily, budget: Budget, threads: Option<usize>) -> Result<OracleResult, OracleError> {
    let started = Instant::now();
    let tree = f.realize()?;
    if tree.order() > p + 3 {
        return Err(OracleError::TooLarge { tree: tree.order(), p });
    }
    if tree.order() > p {
        return Ok(OracleResult {
            p,
            value: choose2(p as u64),
            witness: SimpleGraph::complete(p),
            nodes_explored: 0,
            elapsed: started.elapsed(),
            exact: true,
        });
    }
    let anchored = EdgeAnchoredSearch::new(&tree)?;
    let slots: Vec<(usize, usize)> = (1..p).flat_map(|u| (u + 1..p).map(move |v| (u, v))).collect();
    let shared = Shared {
        slots: &slots,
        anchored: &anchored,
        best: AtomicU64::new(0),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        budget,
        started,
    };

    let mut best: Option<(u64, SimpleGraph)> = Some((0, SimpleGraph::empty(p)));
    let mut nodes = 0u64;
    for cap in (1..p).rev() {
        // At most floor(p * cap / 2) edges when every degree is <= cap.
        if (p * cap / 2) as u64 <= shared.best.load(Ordering::Relaxed) || shared.stop.load(Ordering::Relaxed) {
            break;
        }
        let star = SimpleGraph::from_edges(p, (1..=cap).map(|v| (0, v))).expect("star fits");
        if generic_backtrack(&star, &tree)?.is_some() {
            continue;
        }
        let root = Task {
            cap,
            edges: cap as u64,
            graph: star,
            next_slot: 0,
        };
        let tasks = match threads {
            Some(t) => split(&shared, root, 8 * t),
            None => vec![root],
        };
        let outcomes: Vec<(u64, Option<(u64, SimpleGraph)>)> = if threads.is_some() {
            tasks.par_iter().map(|task| solve(&shared, task)).collect()
        } else {
            tasks.iter().map(|task| solve(&shared, task)).collect()
        };
        for (task_nodes, local) in outcomes {
            nodes += task_nodes;
            if let Some((value, g)) = local {
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, g));
                }
            }
        }
    }
    let (value, witness) = best.expect("empty graph is always recorded");
    Ok(OracleResult {
        p,
        value,
        witness,
        nodes_explored: nodes,
        elapsed: started.elapsed(),
        exact: !shared.stop.load(Ordering::Relaxed),
    })
}

fn solve(shared: &Shared<'_>, task: &Task) -> (u64, Option<(u64, SimpleGraph)>) {
    let mut worker = Worker::new(shared, task);
    worker.search(task.next_slot);
    shared.nodes.fetch_add(worker.unflushed, Ordering::Relaxed);
    (worker.nodes, worker.best_local)
}

/// Expands the first slot decisions breadth-first until there are at least
/// `want` subproblems (or the slots run out).
fn split(shared: &Shared<'_>, root: Task, want: usize) -> Vec<Task> {
    let mut frontier = vec![root];
    while frontier.len() < want {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        let mut progressed = false;
        for task in frontier {
            let i = task.next_slot;
            if i == shared.slots.len() {
                next.push(task);
                continue;
            }
            progressed = true;
            let (u, v) = shared.slots[i];
            if task.graph.degree(u) < task.cap && task.graph.degree(v) < task.cap {
                let mut g = task.graph.clone();
                g.insert_edge(u, v);
                if shared.anchored.find(&g, u, v).is_none() {
                    next.push(Task {
                        cap: task.cap,
                        graph: g,
                        edges: task.edges + 1,
                        next_slot: i + 1,
                    });
                }
            }
            next.push(Task {
                next_slot: i + 1,
                ..task
            });
        }
        frontier = next;
        if !progressed {
            break;
        }
    }
    frontier
}

/// One row of a formula sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaRow {
    pub p: usize,
    pub oracle: u64,
    pub formula: u64,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub tree: String,
    pub rows: Vec<FormulaRow>,
    /// Values of `p` where oracle and formula disagree.
    pub mismatches: Vec<usize>,
}

impl FormulaCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the oracle against `formula(p)` for every `p` in `ps`.
/// Fails with [`OracleError::BudgetExhausted`] if any run is inexact.
pub fn verify_formula<F>(
    ps: impl IntoIterator<Item = usize>,
    f: &TreeFamily,
    formula: F,
    budget: Budget,
    threads: usize,
) -> Result<FormulaCheck, OracleError>
where
    F: Fn(usize) -> u64,
{
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for p in ps {
        let result = ex_bruteforce_parallel(p, f, budget, threads)?;
        if !result.exact {
            return Err(OracleError::BudgetExhausted {
                p,
                lower_bound: result.value,
            });
        }
        let expected = formula(p);
        if result.value != expected {
            mismatches.push(p);
        }
        rows.push(FormulaRow {
            p,
            oracle: result.value,
            formula: expected,
            nodes_explored: result.nodes_explored,
        });
    }
    Ok(FormulaCheck {
        tree: f.to_string(),
        rows,
        mismatches,
    })
}
