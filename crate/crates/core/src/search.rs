//! Exact existence search for complementary hypergraphs.
//!
//! For parameters `(n, t, s)` a complementary hypergraph is a set `R` of
//! `t`-subsets of `[n]` with
//!
//! * (C1) every `(t-s)`-set covered by some member of `R`;
//! * (C2, C3) every member of `R` containing exactly one `(t-s)`-set of
//!   codegree one;
//! * (C4) every vertex missed by some member of `R`.
//!
//! The solver keeps one ternary variable per `t`-set and per-`(t-s)`-set
//! counters of chosen and undecided covers, from which the codegree-one
//! indicators are derived rather than branched on. It branches on an
//! uncovered `(t-s)`-set with the fewest undecided covers, taking each
//! cover in turn and excluding the earlier ones, so the search is exhaustive
//! and no assignment is visited twice.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binomial, colex_rank, full_mask, subsets_of, KSubsets};
use crate::constructions::{near_complete_upper, tau_construction_range, DEFAULT_CHROMATIC_BUDGET};
use crate::hypercore::{complementary_hypergraph, UniformHypergraph, VertexSet, MAX_VERTICES};
use crate::johnson::chromatic_number;
use crate::transversal::nonexistence_bound;
use crate::verify::{verify_complementary, verify_uniquely_saturated};
use crate::{Error, Result};

/// Largest number of edge variables [`build_model`] accepts.
pub const MAX_EDGE_VARS: u64 = 1 << 20;

/// Largest `n` for which all-solutions mode is offered.
pub const MAX_ALL_SOLUTIONS_N: usize = 7;

#[derive(Debug, Clone)]
pub struct ConstraintModel {
    n: usize,
    t: usize,
    s: usize,
    edge_sets: Vec<u64>,
    codegree_sets: Vec<u64>,
    /// For each edge variable, the codegree sets it contains.
    subs: Vec<Vec<u32>>,
    /// For each codegree set, the edge variables containing it.
    covers: Vec<Vec<u32>>,
}

pub fn build_model(n: usize, t: usize, s: usize) -> Result<ConstraintModel> {
    if !(1 <= s && s < t && t < n) {
        return Err(Error::invalid(format!("model needs 1 ≤ s < t < n, got n = {n}, t = {t}, s = {s}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::invalid(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    let vars = binomial(n, t);
    if vars > MAX_EDGE_VARS {
        return Err(Error::invalid(format!("C({n}, {t}) = {vars} edge variables exceed {MAX_EDGE_VARS}")));
    }
    let d = t - s;
    let edge_sets: Vec<u64> = KSubsets::new(n, t).collect();
    let codegree_sets: Vec<u64> = KSubsets::new(n, d).collect();
    let subs: Vec<Vec<u32>> = edge_sets
        .iter()
        .map(|&e| subsets_of(e, d).map(|w| colex_rank(w) as u32).collect())
        .collect();
    let ground = full_mask(n);
    let covers: Vec<Vec<u32>> = codegree_sets
        .iter()
        .map(|&w| {
            let mut c: Vec<u32> = subsets_of(ground & !w, s).map(|x| colex_rank(w | x) as u32).collect();
            c.sort_unstable();
            c
        })
        .collect();
    Ok(ConstraintModel { n, t, s, edge_sets, codegree_sets, subs, covers })
}

impl ConstraintModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn edge_var_count(&self) -> usize {
        self.edge_sets.len()
    }

    pub fn codegree_var_count(&self) -> usize {
        self.codegree_sets.len()
    }

    pub fn edge_set(&self, var: usize) -> VertexSet {
        VertexSet::from_bits(self.edge_sets[var])
    }

    pub fn codegree_set(&self, var: usize) -> VertexSet {
        VertexSet::from_bits(self.codegree_sets[var])
    }

    /// Codegree-set indices referenced by an edge variable.
    pub fn contained_sets(&self, var: usize) -> &[u32] {
        &self.subs[var]
    }

    /// Edge-variable indices referenced by a codegree set.
    pub fn covering_edges(&self, var: usize) -> &[u32] {
        &self.covers[var]
    }

    /// Evaluates (C1)–(C4) on a full assignment of the edge variables.
    pub fn is_solution(&self, selected: &[bool]) -> bool {
        assert_eq!(selected.len(), self.edge_sets.len());
        let mut ones = vec![0u32; self.codegree_sets.len()];
        for (e, _) in selected.iter().enumerate().filter(|(_, &x)| x) {
            for &w in &self.subs[e] {
                ones[w as usize] += 1;
            }
        }
        if ones.iter().any(|&c| c == 0) {
            return false;
        }
        let y: Vec<bool> = ones.iter().map(|&c| c == 1).collect();
        let unique = selected
            .iter()
            .enumerate()
            .filter(|(_, &x)| x)
            .all(|(e, _)| self.subs[e].iter().filter(|&&w| y[w as usize]).count() == 1);
        let missed = selected
            .iter()
            .enumerate()
            .filter(|(_, &x)| x)
            .fold(0u64, |acc, (e, _)| acc | (full_mask(self.n) & !self.edge_sets[e]));
        unique && missed == full_mask(self.n)
    }

    fn hypergraph(&self, chosen: impl Iterator<Item = usize>) -> UniformHypergraph {
        let edges = chosen.map(|e| VertexSet::from_bits(self.edge_sets[e]));
        UniformHypergraph::new(self.n, self.t, edges).expect("model edges are distinct t-sets")
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Fix `{1, …, t}` as a chosen edge.
    pub symmetry: bool,
    /// Enumerate every solution; only for `n ≤ MAX_ALL_SOLUTIONS_N`.
    pub all_solutions: bool,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Worker threads; one means sequential.
    pub threads: usize,
    /// In parallel mode, return the certificate the sequential order would.
    pub deterministic: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            symmetry: false,
            all_solutions: false,
            node_limit: None,
            time_limit: None,
            threads: 1,
            deterministic: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Sat,
    Unsat,
    /// A node or time limit stopped the search first.
    Aborted,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
    #[serde(skip)]
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub status: SearchStatus,
    /// First certificate found; present exactly when the status is SAT.
    pub certificate: Option<UniformHypergraph>,
    /// Every solution, in all-solutions mode.
    pub solutions: Vec<UniformHypergraph>,
    pub stats: SearchStats,
}

const FREE: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;

#[derive(Debug, Clone, Copy)]
enum Event {
    Set(u32),
    Edge(u32),
    Zero(u32),
    Vertex(u32),
}

struct Limits<'a> {
    nodes: &'a AtomicU64,
    node_limit: u64,
    deadline: Option<Instant>,
    aborted: &'a AtomicBool,
}

impl Limits<'_> {
    fn tick(&self) -> bool {
        let done = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if done > self.node_limit {
            self.aborted.store(true, Ordering::Relaxed);
        } else if done % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

enum Branch {
    Leaf,
    Cover { options: Vec<u32>, allow_none: bool },
}

#[derive(Clone)]
struct Solver<'m> {
    model: &'m ConstraintModel,
    x: Vec<u8>,
    ones: Vec<u32>,
    free: Vec<u32>,
    true_xor: Vec<u32>,
    free_xor: Vec<u32>,
    /// Per edge variable: contained codegree sets still uncovered.
    zero: Vec<u32>,
    /// Per chosen edge: contained codegree sets with exactly one cover.
    cand: Vec<u32>,
    /// Per chosen edge: xor of the `cand` set indices.
    cand_xor: Vec<u32>,
    /// Per chosen edge: those of `cand` with no undecided cover left.
    det: Vec<u32>,
    avoid: Vec<u32>,
    free_avoid: Vec<u32>,
    free_avoid_xor: Vec<u32>,
    trail: Vec<u32>,
    events: Vec<Event>,
    propagations: u64,
}

impl<'m> Solver<'m> {
    fn new(model: &'m ConstraintModel) -> Self {
        let nv = model.edge_sets.len();
        let nw = model.codegree_sets.len();
        let n = model.n;
        let free: Vec<u32> = model.covers.iter().map(|c| c.len() as u32).collect();
        let free_xor = model.covers.iter().map(|c| c.iter().fold(0, |a, &e| a ^ e)).collect();
        let mut free_avoid = vec![0u32; n];
        let mut free_avoid_xor = vec![0u32; n];
        for (e, &set) in model.edge_sets.iter().enumerate() {
            for v in VertexSet::from_bits(full_mask(n) & !set) {
                free_avoid[v - 1] += 1;
                free_avoid_xor[v - 1] ^= e as u32;
            }
        }
        Solver {
            model,
            x: vec![FREE; nv],
            ones: vec![0; nw],
            free,
            true_xor: vec![0; nw],
            free_xor,
            zero: model.subs.iter().map(|s| s.len() as u32).collect(),
            cand: vec![0; nv],
            cand_xor: vec![0; nv],
            det: vec![0; nv],
            avoid: vec![0; n],
            free_avoid,
            free_avoid_xor,
            trail: Vec::new(),
            events: Vec::new(),
            propagations: 0,
        }
    }

    fn apply(&mut self, e: usize, val: bool) {
        let model = self.model;
        let ei = e as u32;
        self.x[e] = if val { TRUE } else { FALSE };
        self.trail.push(ei);
        for &w in &model.subs[e] {
            let wi = w;
            let w = w as usize;
            self.free[w] -= 1;
            self.free_xor[w] ^= ei;
            if val {
                self.ones[w] += 1;
                self.true_xor[w] ^= ei;
                match self.ones[w] {
                    1 => {
                        for &u in &model.covers[w] {
                            self.zero[u as usize] -= 1;
                            if self.zero[u as usize] == 0 {
                                self.events.push(Event::Zero(u));
                            }
                        }
                    }
                    2 => {
                        let prev = self.true_xor[w] ^ ei;
                        self.cand[prev as usize] -= 1;
                        self.cand_xor[prev as usize] ^= wi;
                        self.events.push(Event::Set(prev));
                    }
                    _ => {}
                }
            } else {
                match (self.ones[w], self.free[w]) {
                    (0, _) => self.events.push(Event::Edge(wi)),
                    (1, 0) => {
                        let p = self.true_xor[w];
                        self.det[p as usize] += 1;
                        self.events.push(Event::Set(p));
                    }
                    (1, 1) => self.events.push(Event::Edge(wi)),
                    _ => {}
                }
            }
        }
        if val {
            let (mut c, mut d, mut x) = (0, 0, 0);
            for &w in &model.subs[e] {
                if self.ones[w as usize] == 1 {
                    c += 1;
                    x ^= w;
                    if self.free[w as usize] == 0 {
                        d += 1;
                    }
                }
            }
            self.cand[e] = c;
            self.det[e] = d;
            self.cand_xor[e] = x;
            self.events.push(Event::Set(ei));
        }
        for v in VertexSet::from_bits(full_mask(model.n) & !model.edge_sets[e]) {
            let v = v - 1;
            self.free_avoid[v] -= 1;
            self.free_avoid_xor[v] ^= ei;
            if val {
                self.avoid[v] += 1;
            } else {
                self.events.push(Event::Vertex(v as u32));
            }
        }
    }

    fn retract(&mut self) {
        let model = self.model;
        let ei = self.trail.pop().expect("non-empty trail");
        let e = ei as usize;
        let val = self.x[e] == TRUE;
        for &w in &model.subs[e] {
            let wi = w;
            let w = w as usize;
            if val {
                match self.ones[w] {
                    1 => {
                        for &u in &model.covers[w] {
                            self.zero[u as usize] += 1;
                        }
                    }
                    2 => {
                        let prev = (self.true_xor[w] ^ ei) as usize;
                        self.cand[prev] += 1;
                        self.cand_xor[prev] ^= wi;
                    }
                    _ => {}
                }
                self.ones[w] -= 1;
                self.true_xor[w] ^= ei;
            } else if self.ones[w] == 1 && self.free[w] == 0 {
                self.det[self.true_xor[w] as usize] -= 1;
            }
            self.free[w] += 1;
            self.free_xor[w] ^= ei;
        }
        for v in VertexSet::from_bits(full_mask(model.n) & !model.edge_sets[e]) {
            let v = v - 1;
            self.free_avoid[v] += 1;
            self.free_avoid_xor[v] ^= ei;
            if val {
                self.avoid[v] -= 1;
            }
        }
        self.x[e] = FREE;
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            self.retract();
        }
    }

    fn force(&mut self, e: usize, val: bool) -> bool {
        match self.x[e] {
            FREE => {
                self.propagations += 1;
                self.apply(e, val);
                true
            }
            TRUE => val,
            _ => !val,
        }
    }

    /// Rules for a chosen edge: it needs exactly one codegree-one subset.
    fn check_chosen(&mut self, p: usize) -> bool {
        let model = self.model;
        let (c, d) = (self.cand[p], self.det[p]);
        if c == 0 || d >= 2 {
            return false;
        }
        if c == 1 {
            let w0 = self.cand_xor[p] as usize;
            if self.free[w0] > 0 {
                for &u in &model.covers[w0] {
                    if self.x[u as usize] == FREE {
                        self.force(u as usize, false);
                    }
                }
            }
        } else if d == 1 {
            for &w in &model.subs[p] {
                let w = w as usize;
                if self.ones[w] == 1 && self.free[w] == 1 && !self.force(self.free_xor[w] as usize, true) {
                    return false;
                }
            }
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(ev) = self.events.pop() {
            let ok = match ev {
                Event::Set(p) => self.x[p as usize] != TRUE || self.check_chosen(p as usize),
                Event::Edge(w) => {
                    let w = w as usize;
                    match (self.ones[w], self.free[w]) {
                        (0, 0) => false,
                        (0, 1) => self.force(self.free_xor[w] as usize, true),
                        // the other candidates of a settled edge must gain a cover
                        (1, 1) if self.det[self.true_xor[w] as usize] == 1 => {
                            self.force(self.free_xor[w] as usize, true)
                        }
                        _ => true,
                    }
                }
                Event::Zero(u) => {
                    let u = u as usize;
                    self.x[u] != FREE || self.zero[u] != 0 || self.force(u, false)
                }
                Event::Vertex(v) => {
                    let v = v as usize;
                    if self.avoid[v] > 0 {
                        true
                    } else {
                        match self.free_avoid[v] {
                            0 => false,
                            1 => self.force(self.free_avoid_xor[v] as usize, true),
                            _ => true,
                        }
                    }
                }
            };
            if !ok {
                self.events.clear();
                return false;
            }
        }
        true
    }

    fn free_covers(&self, w: usize) -> impl Iterator<Item = u32> + '_ {
        self.model.covers[w].iter().copied().filter(|&u| self.x[u as usize] == FREE)
    }

    fn select(&self) -> Branch {
        let nw = self.ones.len();
        let uncovered = (0..nw).filter(|&w| self.ones[w] == 0).min_by_key(|&w| self.free[w]);
        if let Some(w) = uncovered {
            let mut options: Vec<u32> = self.free_covers(w).collect();
            // most uncovered sets first, colex on ties
            options.sort_by_key(|&u| (std::cmp::Reverse(self.zero[u as usize]), u));
            return Branch::Cover { options, allow_none: false };
        }
        let pending = (0..nw)
            .filter(|&w| self.ones[w] == 1 && self.free[w] > 0 && self.cand[self.true_xor[w] as usize] >= 2)
            .min_by_key(|&w| self.free[w]);
        if let Some(w) = pending {
            return Branch::Cover { options: self.free_covers(w).collect(), allow_none: true };
        }
        if let Some(v) = (0..self.model.n).find(|&v| self.avoid[v] == 0) {
            let outside = |u: u32| self.model.edge_sets[u as usize] & (1 << v) == 0;
            let options = (0..self.x.len() as u32)
                .filter(|&u| self.x[u as usize] == FREE && outside(u))
                .collect();
            return Branch::Cover { options, allow_none: false };
        }
        Branch::Leaf
    }

    fn chosen(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.x.len()).filter(|&e| self.x[e] == TRUE)
    }
}

struct Run<'a> {
    limits: Limits<'a>,
    all: bool,
    found: Vec<Vec<usize>>,
}

enum Flow {
    Continue,
    Stop,
}

impl Run<'_> {
    fn dfs(&mut self, solver: &mut Solver) -> Flow {
        if !self.limits.tick() {
            return Flow::Stop;
        }
        match solver.select() {
            Branch::Leaf => {
                let mark = solver.trail.len();
                let frees: Vec<usize> = (0..solver.x.len()).filter(|&e| solver.x[e] == FREE).collect();
                let ok = frees.into_iter().all(|e| solver.force(e, false)) && solver.propagate();
                if ok {
                    self.found.push(solver.chosen().collect());
                }
                solver.undo_to(mark);
                if ok && !self.all {
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            }
            Branch::Cover { options, allow_none } => {
                let mark = solver.trail.len();
                let flow = self.exclusion(solver, &options, allow_none);
                solver.undo_to(mark);
                flow
            }
        }
    }

    /// Tries each option as the first chosen one; with `allow_none`, also
    /// the branch choosing none of them.
    fn exclusion(&mut self, solver: &mut Solver, options: &[u32], allow_none: bool) -> Flow {
        for &u in options {
            let u = u as usize;
            match solver.x[u] {
                FREE => {
                    let mark = solver.trail.len();
                    if solver.force(u, true) && solver.propagate() {
                        if let Flow::Stop = self.dfs(solver) {
                            return Flow::Stop;
                        }
                    }
                    solver.undo_to(mark);
                    if !(solver.force(u, false) && solver.propagate()) {
                        return Flow::Continue;
                    }
                }
                TRUE => return self.dfs(solver),
                _ => {}
            }
        }
        if allow_none {
            self.dfs(solver)
        } else {
            Flow::Continue
        }
    }
}

/// Decides whether a complementary hypergraph with parameters `(n, t, s)`
/// exists, i.e. a primitive uniquely `K_{n-t+s}^(n-t)`-saturated hypergraph
/// on `n` vertices.
pub fn solve_existence(n: usize, t: usize, s: usize, config: &SearchConfig) -> Result<SearchResult> {
    let model = build_model(n, t, s)?;
    solve_model(&model, config)
}

pub fn solve_model(model: &ConstraintModel, config: &SearchConfig) -> Result<SearchResult> {
    if config.all_solutions && model.n > MAX_ALL_SOLUTIONS_N {
        return Err(Error::invalid(format!(
            "all-solutions mode is limited to n ≤ {MAX_ALL_SOLUTIONS_N}"
        )));
    }
    let start = Instant::now();
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let limits = || Limits {
        nodes: &nodes,
        node_limit: config.node_limit.unwrap_or(u64::MAX),
        deadline: config.time_limit.map(|d| start + d),
        aborted: &aborted,
    };

    let mut root = Solver::new(model);
    for w in 0..model.codegree_sets.len() {
        root.events.push(Event::Edge(w as u32));
    }
    for v in 0..model.n {
        root.events.push(Event::Vertex(v as u32));
    }
    let mut consistent = true;
    if config.symmetry {
        consistent &= root.force(0, true);
    }
    consistent = consistent && root.propagate();

    let mut propagations = root.propagations;
    let mut found: Vec<Vec<usize>> = Vec::new();
    if consistent {
        if config.threads <= 1 {
            let mut run = Run { limits: limits(), all: config.all_solutions, found: Vec::new() };
            run.dfs(&mut root);
            found = run.found;
            propagations = root.propagations;
        } else {
            let (f, p) = solve_parallel(&root, config, &limits)?;
            found = f;
            propagations += p;
        }
    }

    let was_aborted = aborted.load(Ordering::Relaxed);
    let solutions: Vec<UniformHypergraph> = found.iter().map(|c| model.hypergraph(c.iter().copied())).collect();
    for r in &solutions {
        certify(model, r)?;
    }
    let status = if !solutions.is_empty() && !(config.all_solutions && was_aborted) {
        SearchStatus::Sat
    } else if was_aborted {
        SearchStatus::Aborted
    } else {
        SearchStatus::Unsat
    };
    Ok(SearchResult {
        status,
        certificate: solutions.first().cloned(),
        solutions: if config.all_solutions { solutions } else { Vec::new() },
        stats: SearchStats {
            nodes: nodes.load(Ordering::Relaxed),
            propagations,
            wall: start.elapsed(),
        },
    })
}

/// Splits the root branch into independent subproblems and solves them on
/// a worker pool.
fn solve_parallel<'a>(
    root: &Solver,
    config: &SearchConfig,
    limits: &(dyn Fn() -> Limits<'a> + Sync),
) -> Result<(Vec<Vec<usize>>, u64)> {
    let (options, allow_none) = match root.select() {
        Branch::Leaf => {
            let mut solver = root.clone();
            let mut run = Run { limits: limits(), all: config.all_solutions, found: Vec::new() };
            run.dfs(&mut solver);
            return Ok((run.found, solver.propagations));
        }
        Branch::Cover { options, allow_none } => (options, allow_none),
    };
    // subproblem i chooses options[i] and rejects options[..i]; the last
    // rejects all of them
    let count = options.len() + usize::from(allow_none);
    let task = |i: usize| -> (Vec<Vec<usize>>, u64) {
        let mut solver = root.clone();
        solver.propagations = 0;
        let mut ok = true;
        for &u in &options[..i.min(options.len())] {
            ok = ok && solver.force(u as usize, false) && solver.propagate();
        }
        if i < options.len() {
            ok = ok && solver.force(options[i] as usize, true) && solver.propagate();
        }
        let mut run = Run { limits: limits(), all: config.all_solutions, found: Vec::new() };
        if ok {
            run.dfs(&mut solver);
        }
        (run.found, solver.propagations)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let results: Vec<(Vec<Vec<usize>>, u64)> = pool.install(|| {
        if config.all_solutions || config.deterministic {
            (0..count).into_par_iter().map(task).collect()
        } else {
            let hit = (0..count).into_par_iter().map(task).find_any(|(f, _)| !f.is_empty());
            hit.into_iter().collect()
        }
    });
    let propagations = results.iter().map(|(_, p)| p).sum();
    let found = if config.all_solutions {
        results.into_iter().flat_map(|(f, _)| f).collect()
    } else {
        results.into_iter().find(|(f, _)| !f.is_empty()).map(|(f, _)| f).unwrap_or_default()
    };
    Ok((found, propagations))
}

/// Both certifications of a solution: the three properties on `R`, and the
/// saturation check on the hypergraph it encodes.
fn certify(model: &ConstraintModel, r: &UniformHypergraph) -> Result<()> {
    let verdict = verify_complementary(r, model.t, model.s)?;
    if !verdict.is_ok() {
        return Err(Error::ConstructionDefect(format!("search certificate rejected: {verdict}")));
    }
    let h = complementary_hypergraph(r)?;
    let verdict = verify_uniquely_saturated(&h, h.k() + model.s)?;
    if !verdict.is_ok() {
        return Err(Error::ConstructionDefect(format!("search certificate does not reconstruct: {verdict}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Exists,
    NotExists,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "bound")]
    Bound,
    #[serde(rename = "construction:thm3.2")]
    DoubleStar,
    #[serde(rename = "construction:thm4.5")]
    TauCritical,
    #[serde(rename = "construction:thm5.1")]
    NearComplete,
    #[serde(rename = "search")]
    Search,
    #[serde(rename = "unknown")]
    Unknown,
}

impl Provenance {
    /// Short form used in table glyphs; constructions drop the `construction:` prefix.
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Bound => "bound",
            Provenance::DoubleStar => "thm3.2",
            Provenance::TauCritical => "thm4.5",
            Provenance::NearComplete => "thm5.1",
            Provenance::Search => "search",
            Provenance::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableCell {
    pub k: usize,
    /// `n - r`.
    pub ell: usize,
    /// `r - k`.
    pub s: usize,
    pub n: usize,
    pub r: usize,
    pub status: CellStatus,
    pub provenance: Provenance,
    pub nodes: u64,
    #[serde(skip)]
    pub wall: Duration,
    #[serde(skip)]
    pub certificate: Option<UniformHypergraph>,
}

impl TableCell {
    /// `Y:<provenance>`, `N:<provenance>` or `?`.
    pub fn glyph(&self) -> String {
        match self.status {
            CellStatus::Exists => format!("Y:{}", self.provenance.tag()),
            CellStatus::NotExists => format!("N:{}", self.provenance.tag()),
            CellStatus::Unknown => "?".to_string(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TableBudget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
    pub threads: usize,
    /// Passed through to [`SearchConfig::symmetry`].
    pub symmetry: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExistenceTable {
    pub k: usize,
    pub ells: Vec<usize>,
    pub ss: Vec<usize>,
    /// Row-major: one row per `ell`, one column per `s`.
    pub cells: Vec<TableCell>,
}

impl ExistenceTable {
    pub fn cell(&self, ell: usize, s: usize) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.ell == ell && c.s == s)
    }

    /// Rows `n = r + ell`, columns `r`.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# k={}\nn-r\\r", self.k);
        for &s in &self.ss {
            out.push_str(&format!("\t{}", self.k + s));
        }
        out.push('\n');
        for &ell in &self.ells {
            out.push_str(&ell.to_string());
            for &s in &self.ss {
                let glyph = self.cell(ell, s).map_or_else(|| "?".to_string(), TableCell::glyph);
                out.push('\t');
                out.push_str(&glyph);
            }
            out.push('\n');
        }
        out
    }

    /// Whether, in every row, no non-existence precedes an existence.
    pub fn rows_monotone(&self) -> Vec<(usize, bool)> {
        self.ells
            .iter()
            .map(|&ell| {
                let mut seen_no = false;
                let mut ok = true;
                for &s in &self.ss {
                    match self.cell(ell, s).map(|c| c.status) {
                        Some(CellStatus::NotExists) => seen_no = true,
                        Some(CellStatus::Exists) if seen_no => ok = false,
                        _ => {}
                    }
                }
                (ell, ok)
            })
            .collect()
    }
}

struct TheoremOracle {
    k: usize,
    chromatic: std::collections::HashMap<usize, Option<usize>>,
}

impl TheoremOracle {
    fn new(k: usize) -> Self {
        TheoremOracle { k, chromatic: Default::default() }
    }

    /// Number of base classes available for the τ-critical construction.
    fn colors(&mut self, ell: usize) -> Option<usize> {
        let k = self.k;
        let m = ell + k - 1;
        *self.chromatic.entry(m).or_insert_with(|| {
            // an upper-bound-only value is the Graham–Sloane class count
            chromatic_number(m, k - 1, DEFAULT_CHROMATIC_BUDGET).ok().map(|chi| chi.value)
        })
    }

    fn decide(&mut self, ell: usize, s: usize) -> Option<(CellStatus, Provenance)> {
        let k = self.k;
        let r = k + s;
        let n = r + ell;
        if ell == 1 && k >= 3 && n > near_complete_upper(k) {
            return Some((CellStatus::NotExists, Provenance::NearComplete));
        }
        if n as u64 >= nonexistence_bound(k, ell) {
            return Some((CellStatus::NotExists, Provenance::Bound));
        }
        if k >= 4 && r <= 2 * k - 3 {
            return Some((CellStatus::Exists, Provenance::DoubleStar));
        }
        if ell == 1 && (k >= 4 || (k == 3 && n == 6)) && n >= k + 2 {
            return Some((CellStatus::Exists, Provenance::NearComplete));
        }
        if k >= 3 && ell + k - 1 <= MAX_VERTICES {
            if let Some(u) = self.colors(ell) {
                let (lo, hi) = tau_construction_range(k, ell, u);
                if (lo..=hi).contains(&n) {
                    return Some((CellStatus::Exists, Provenance::TauCritical));
                }
            }
        }
        None
    }
}

/// One cell: `r = k + s`, `n = r + ell`. Theorems first, search otherwise.
pub fn classify_cell(k: usize, ell: usize, s: usize, budget: &TableBudget) -> Result<TableCell> {
    classify_with(&mut TheoremOracle::new(k), ell, s, budget)
}

fn classify_with(oracle: &mut TheoremOracle, ell: usize, s: usize, budget: &TableBudget) -> Result<TableCell> {
    let k = oracle.k;
    if k < 2 || ell < 1 || s < 1 {
        return Err(Error::invalid(format!("cells need k ≥ 2, ℓ ≥ 1, s ≥ 1 (got {k}, {ell}, {s})")));
    }
    let r = k + s;
    let n = r + ell;
    let mut cell = TableCell {
        k,
        ell,
        s,
        n,
        r,
        status: CellStatus::Unknown,
        provenance: Provenance::Unknown,
        nodes: 0,
        wall: Duration::ZERO,
        certificate: None,
    };
    if let Some((status, provenance)) = oracle.decide(ell, s) {
        cell.status = status;
        cell.provenance = provenance;
        return Ok(cell);
    }
    let t = n - k;
    if n > MAX_VERTICES || binomial(n, t) > MAX_EDGE_VARS {
        return Ok(cell);
    }
    let config = SearchConfig {
        node_limit: budget.nodes,
        time_limit: budget.time,
        threads: budget.threads.max(1),
        symmetry: budget.symmetry,
        ..SearchConfig::default()
    };
    let res = solve_existence(n, t, s, &config)?;
    cell.nodes = res.stats.nodes;
    cell.wall = res.stats.wall;
    match res.status {
        SearchStatus::Sat => {
            cell.status = CellStatus::Exists;
            cell.provenance = Provenance::Search;
            cell.certificate = res.certificate;
        }
        SearchStatus::Unsat => {
            cell.status = CellStatus::NotExists;
            cell.provenance = Provenance::Search;
        }
        SearchStatus::Aborted => {}
    }
    Ok(cell)
}

/// The existence table for uniformity `k` over rows `n - r ∈ ells` and
/// columns `r - k ∈ ss`.
pub fn existence_table(
    k: usize,
    ells: RangeInclusive<usize>,
    ss: RangeInclusive<usize>,
    budget: &TableBudget,
) -> Result<ExistenceTable> {
    let mut oracle = TheoremOracle::new(k);
    let mut cells = Vec::new();
    for ell in ells.clone() {
        for s in ss.clone() {
            cells.push(classify_with(&mut oracle, ell, s, budget)?);
        }
    }
    Ok(ExistenceTable { k, ells: ells.collect(), ss: ss.collect(), cells })
}
