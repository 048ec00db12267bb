//! Exact maximum clique and coclique search.
//!
//! Branch and bound over bitsets with greedy colouring bounds, in the style of
//! Tomita's MCQ/MCS and San Segundo's BBMC. Root branches run in parallel and
//! share the incumbent size through an atomic. An optional integral spectral
//! cap stops the search as soon as it is reached.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::WitnessHint;
use crate::graph::{DenseGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("found a set of size {found} above the spectral cap {cap}")]
    CapViolated { found: usize, cap: u64 },
    #[error("initial set is not a clique")]
    InvalidInitial,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Clique,
    Coclique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// The search tree was exhausted.
    Exact,
    /// The witness reaches the integral spectral cap.
    BoundCertified,
    /// The budget ran out; the value is a lower bound.
    LowerBoundOnly,
}

impl SolveStatus {
    pub fn is_final(self) -> bool {
        self != SolveStatus::LowerBoundOnly
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
    pub threads: usize,
    /// Local search steps allowed in [`seed_search`].
    pub seed_iterations: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(600),
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed_iterations: 2_000_000,
            seed: 0,
        }
    }
}

impl Budget {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: usize,
    pub witness: Vec<usize>,
    pub status: SolveStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Extra inputs for [`max_clique_with`].
#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Integral upper bound known in advance.
    pub spectral_cap: Option<u64>,
    /// A clique to start from; it must be valid.
    pub initial: Vec<usize>,
    /// Only search cliques through vertex 0. Sound for vertex-transitive
    /// graphs, where every vertex lies in a maximum clique.
    pub vertex_transitive: bool,
}

pub fn verify_witness(g: &DenseGraph, set: &[usize], mode: Mode) -> Result<bool, GraphError> {
    match mode {
        Mode::Clique => g.is_clique(set),
        Mode::Coclique => g.is_coclique(set),
    }
}

pub fn max_clique(g: &DenseGraph, spectral_cap: Option<u64>, budget: &Budget) -> Result<SolveResult, SolverError> {
    let opts = SolveOptions {
        spectral_cap,
        ..SolveOptions::default()
    };
    max_clique_with(g, &opts, budget)
}

pub fn max_coclique(g: &DenseGraph, spectral_cap: Option<u64>, budget: &Budget) -> Result<SolveResult, SolverError> {
    max_clique(&g.complement(), spectral_cap, budget)
}

/// [`max_clique_with`] on the complement when `mode` is `Coclique`.
pub fn solve(g: &DenseGraph, mode: Mode, opts: &SolveOptions, budget: &Budget) -> Result<SolveResult, SolverError> {
    match mode {
        Mode::Clique => max_clique_with(g, opts, budget),
        Mode::Coclique => max_clique_with(&g.complement(), opts, budget),
    }
}

struct Search {
    adj: Vec<Vec<u64>>,
    words: usize,
    cap: usize,
    best: AtomicUsize,
    best_set: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Instant,
    out_of_budget: AtomicBool,
}

impl Search {
    fn done(&self) -> bool {
        self.out_of_budget.load(Ordering::Relaxed) || self.best.load(Ordering::Relaxed) >= self.cap
    }

    fn offer(&self, clique: &[usize]) {
        if clique.len() <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut set = self.best_set.lock().expect("not poisoned");
        if clique.len() > set.len() {
            *set = clique.to_vec();
            self.best.store(clique.len(), Ordering::Relaxed);
        }
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.max_nodes || (n % 1024 == 0 && Instant::now() >= self.deadline) {
            self.out_of_budget.store(true, Ordering::Relaxed);
        }
        !self.done()
    }

    /// Greedy sequential colouring of `p`: vertices listed by colour class,
    /// with the number of colours used up to each position.
    fn colour_sort(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = p.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        let mut q = vec![0u64; self.words];
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            q.copy_from_slice(&uncoloured);
            while let Some(v) = first_bit(&q) {
                clear(&mut uncoloured, v);
                clear(&mut q, v);
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&self, clique: &mut Vec<usize>, mut p: Vec<u64>) {
        if !self.tick() {
            return;
        }
        let (order, colours) = self.colour_sort(&p);
        for i in (0..order.len()).rev() {
            let best = self.best.load(Ordering::Relaxed);
            if clique.len() + colours[i] <= best || self.done() {
                return;
            }
            let v = order[i];
            clique.push(v);
            let next: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                self.offer(clique);
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            clear(&mut p, v);
        }
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1u64 << (v % 64));
}

fn set(words: &mut [u64], v: usize) {
    words[v / 64] |= 1u64 << (v % 64);
}

/// Greedy clique, adding vertices in order while possible.
fn greedy_clique(g: &DenseGraph, order: &[usize]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for &v in order {
        if clique.iter().all(|&u| g.adjacent(u, v)) {
            clique.push(v);
        }
    }
    clique
}

pub fn max_clique_with(g: &DenseGraph, opts: &SolveOptions, budget: &Budget) -> Result<SolveResult, SolverError> {
    let start = Instant::now();
    let n = g.nu();
    if n == 0 {
        return Err(SolverError::EmptyGraph);
    }
    if !opts.initial.is_empty() && !g.is_clique(&opts.initial)? {
        return Err(SolverError::InvalidInitial);
    }
    let cap = opts.spectral_cap.map_or(usize::MAX, |c| c as usize);

    // Relabel by descending degree, ties by index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let words = n.div_ceil(64);
    let adj: Vec<Vec<u64>> = order
        .iter()
        .map(|&v| {
            let mut row = vec![0u64; words];
            for u in g.neighbors(v) {
                set(&mut row, position[u]);
            }
            row
        })
        .collect();

    let mut incumbent = greedy_clique(g, &order);
    if opts.initial.len() > incumbent.len() {
        incumbent = opts.initial.clone();
    }
    let incumbent: Vec<usize> = incumbent.iter().map(|&v| position[v]).collect();
    let search = Search {
        adj,
        words,
        cap,
        best: AtomicUsize::new(incumbent.len()),
        best_set: Mutex::new(incumbent),
        nodes: AtomicU64::new(0),
        max_nodes: budget.max_nodes,
        deadline: start + budget.max_time,
        out_of_budget: AtomicBool::new(false),
    };

    if !search.done() {
        // Root branches: vertex order[i] with candidates among earlier vertices.
        let branches: Vec<(usize, Vec<u64>, usize)> = if opts.vertex_transitive {
            let v = position[0];
            vec![(v, search.adj[v].clone(), usize::MAX)]
        } else {
            let mut all = vec![0u64; words];
            for v in 0..n {
                set(&mut all, v);
            }
            let (order, colours) = search.colour_sort(&all);
            let mut seen = vec![0u64; words];
            let mut out = Vec::with_capacity(n);
            for (&v, &c) in order.iter().zip(&colours) {
                let p: Vec<u64> = seen.iter().zip(&search.adj[v]).map(|(a, b)| a & b).collect();
                out.push((v, p, c));
                set(&mut seen, v);
            }
            out.reverse();
            out
        };
        let run = |(v, p, bound): &(usize, Vec<u64>, usize)| {
            if *bound <= search.best.load(Ordering::Relaxed) || search.done() {
                return;
            }
            let mut clique = vec![*v];
            if p.iter().all(|&w| w == 0) {
                search.offer(&clique);
            } else {
                search.expand(&mut clique, p.clone());
            }
        };
        if budget.threads <= 1 {
            branches.iter().for_each(run);
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(budget.threads)
                .build()
                .expect("thread pool");
            pool.install(|| branches.par_iter().for_each(run));
        }
    }

    let best = search.best_set.into_inner().expect("not poisoned");
    let mut witness: Vec<usize> = best.iter().map(|&i| order[i]).collect();
    witness.sort_unstable();
    assert!(g.is_clique(&witness)?, "solver produced an invalid clique");
    let value = witness.len();
    if value > cap {
        return Err(SolverError::CapViolated {
            found: value,
            cap: cap as u64,
        });
    }
    let status = if value == cap {
        SolveStatus::BoundCertified
    } else if search.out_of_budget.load(Ordering::Relaxed) {
        SolveStatus::LowerBoundOnly
    } else {
        SolveStatus::Exact
    };
    Ok(SolveResult {
        value,
        witness,
        status,
        nodes_explored: search.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

/// Looks for a clique (or coclique) of at least `target` vertices: the hint
/// first, then a greedy set, then a fixed-size tabu search.
pub fn seed_search(
    g: &DenseGraph,
    target: usize,
    hints: &WitnessHint,
    mode: Mode,
    budget: &Budget,
) -> Option<Vec<usize>> {
    if target == 0 || g.nu() == 0 {
        return (target == 0).then(Vec::new);
    }
    let hint = match mode {
        Mode::Clique => hints.clique.as_ref(),
        Mode::Coclique => hints.coclique.as_ref(),
    };
    if let Some(h) = hint {
        if h.len() >= target && verify_witness(g, h, mode).unwrap_or(false) {
            return Some(h.clone());
        }
    }
    if target > g.nu() {
        return None;
    }
    let h = match mode {
        Mode::Clique => g.clone(),
        Mode::Coclique => g.complement(),
    };
    let found = tabu_clique(&h, target, budget)?;
    debug_assert!(verify_witness(g, &found, mode).unwrap_or(false));
    Some(found)
}

/// Fixed-size swap search for a `k`-clique, minimising the number of missing
/// edges inside the current set.
fn tabu_clique(g: &DenseGraph, k: usize, budget: &Budget) -> Option<Vec<usize>> {
    let n = g.nu();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let deadline = Instant::now() + budget.max_time;
    let mut order: Vec<usize> = (0..n).collect();
    let start = greedy_clique(g, &order);
    if start.len() >= k {
        let mut s = start[..k].to_vec();
        s.sort_unstable();
        return Some(s);
    }

    let mut in_set = vec![false; n];
    let mut members: Vec<usize> = Vec::with_capacity(k);
    // missing[w] = members (other than w) not adjacent to w.
    let mut missing = vec![0usize; n];
    let mut tabu = vec![0u64; n];

    let fill = |members: &mut Vec<usize>, in_set: &mut Vec<bool>, missing: &mut Vec<usize>, seed_set: &[usize], rng: &mut ChaCha8Rng, order: &mut Vec<usize>| {
        members.clear();
        in_set.iter_mut().for_each(|x| *x = false);
        members.extend_from_slice(seed_set);
        for &v in seed_set {
            in_set[v] = true;
        }
        order.shuffle(rng);
        for &v in order.iter() {
            if members.len() == k {
                break;
            }
            if !in_set[v] {
                in_set[v] = true;
                members.push(v);
            }
        }
        for w in 0..n {
            missing[w] = members.iter().filter(|&&u| u != w && !g.adjacent(u, w)).count();
        }
    };

    fill(&mut members, &mut in_set, &mut missing, &start, &mut rng, &mut order);
    let mut conflicts: usize = members.iter().map(|&u| missing[u]).sum::<usize>() / 2;
    let mut best_conflicts = conflicts;
    let mut stale = 0u64;
    let restart_after = 20 * n as u64 + 1000;

    for iter in 1..=budget.seed_iterations {
        if conflicts == 0 {
            let mut s = members.clone();
            s.sort_unstable();
            return Some(s);
        }
        if iter % 4096 == 0 && Instant::now() >= deadline {
            return None;
        }
        // Leaving vertex: most conflicted non-tabu member.
        let mut out = None;
        let mut out_score = 0;
        let mut ties = 0;
        for (pos, &u) in members.iter().enumerate() {
            if tabu[u] > iter {
                continue;
            }
            let score = missing[u];
            if out.is_none() || score > out_score {
                out = Some(pos);
                out_score = score;
                ties = 1;
            } else if score == out_score {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    out = Some(pos);
                }
            }
        }
        let Some(out_pos) = out else {
            continue;
        };
        let u = members[out_pos];
        // Entering vertex: least conflicted non-tabu outsider, counted
        // without `u`.
        let mut inn = None;
        let mut in_score = usize::MAX;
        let mut ties = 0;
        for v in 0..n {
            if in_set[v] || tabu[v] > iter {
                continue;
            }
            let score = missing[v] - usize::from(!g.adjacent(u, v));
            if score < in_score {
                inn = Some(v);
                in_score = score;
                ties = 1;
            } else if score == in_score {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    inn = Some(v);
                }
            }
        }
        let Some(v) = inn else {
            continue;
        };
        conflicts = conflicts - missing[u] + in_score;
        in_set[u] = false;
        in_set[v] = true;
        members[out_pos] = v;
        for w in 0..n {
            if w != u && !g.adjacent(u, w) {
                missing[w] -= 1;
            }
            if w != v && !g.adjacent(v, w) {
                missing[w] += 1;
            }
        }
        tabu[u] = iter + 7 + rng.gen_range(0..10);
        tabu[v] = iter + 2 + rng.gen_range(0..3);
        if conflicts < best_conflicts {
            best_conflicts = conflicts;
            stale = 0;
        } else {
            stale += 1;
            if stale > restart_after {
                let seed_vertex = rng.gen_range(0..n);
                let mut rotated: Vec<usize> = (0..n).map(|i| (seed_vertex + i) % n).collect();
                rotated.shuffle(&mut rng);
                let restart = greedy_clique(g, &rotated);
                fill(&mut members, &mut in_set, &mut missing, &restart, &mut rng, &mut order);
                conflicts = members.iter().map(|&u| missing[u]).sum::<usize>() / 2;
                best_conflicts = conflicts;
                stale = 0;
                tabu.iter_mut().for_each(|t| *t = 0);
            }
        }
    }
    None
}
