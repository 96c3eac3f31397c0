//! Exact transversal numbers and the uniquely τ-critical checks.
//!
//! A transversal meets every edge; τ is the least size of one. The solver
//! branches on the uncovered edge with the fewest admissible vertices. In the
//! branch that takes the `i`-th vertex, the earlier vertices of that edge are
//! forbidden, so every transversal is produced at most once and minimum ones
//! exactly once. A greedy packing of pairwise disjoint uncovered edges bounds
//! the remaining budget.

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::hypercore::{complement_hypergraph, UniformHypergraph, VertexSet};
use crate::verify::{verify_uniquely_saturated, FailureKind, Verdict, Witness};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalResult {
    pub tau: usize,
    /// Minimum transversals in discovery order, at most `limit` of them.
    pub minimum_transversals: Vec<VertexSet>,
    /// Exact number of minimum transversals.
    pub count: u64,
    pub truncated: bool,
}

struct Enumerator<'a> {
    edges: &'a [VertexSet],
    skip: Option<usize>,
}

struct Tally {
    stop_at: u64,
    keep: usize,
    count: u64,
    found: Vec<VertexSet>,
}

impl Tally {
    fn new(stop_at: u64, keep: usize) -> Self {
        Tally { stop_at, keep, count: 0, found: Vec::new() }
    }
}

impl Enumerator<'_> {
    fn edges(&self) -> impl Iterator<Item = u64> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |&(i, _)| Some(i) != self.skip)
            .map(|(_, e)| e.bits())
    }

    /// Greedy disjoint packing of the uncovered edges' admissible parts.
    fn lower_bound(&self) -> usize {
        let mut used = 0u64;
        let mut packing = 0;
        for e in self.edges() {
            if e & used == 0 {
                used |= e;
                packing += 1;
            }
        }
        packing
    }

    /// Counts transversals of size at most `budget` extending `chosen` and
    /// avoiding `forbidden`. Returns true once the tally asks to stop.
    fn search(&self, chosen: u64, forbidden: u64, budget: usize, tally: &mut Tally) -> bool {
        let mut used = 0u64;
        let mut packing = 0usize;
        let mut branch: Option<u64> = None;
        for e in self.edges() {
            if e & chosen != 0 {
                continue;
            }
            let allowed = e & !forbidden;
            if allowed == 0 {
                return false;
            }
            if allowed & used == 0 {
                used |= allowed;
                packing += 1;
            }
            if branch.map_or(true, |b| allowed.count_ones() < b.count_ones()) {
                branch = Some(allowed);
            }
        }
        let Some(branch) = branch else {
            tally.count += 1;
            if tally.found.len() < tally.keep {
                tally.found.push(VertexSet::from_bits(chosen));
            }
            return tally.count >= tally.stop_at;
        };
        if packing > budget {
            return false;
        }

        let mut order: Vec<(usize, u64)> = Vec::with_capacity(branch.count_ones() as usize);
        let mut rest = branch;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            rest ^= v;
            let degree = self
                .edges()
                .filter(|&e| e & chosen == 0 && e & v != 0)
                .count();
            order.push((degree, v));
        }
        // most uncovered edges first, then smaller label
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut excluded = forbidden;
        for (_, v) in order {
            if self.search(chosen | v, excluded, budget - 1, tally) {
                return true;
            }
            excluded |= v;
        }
        false
    }

    fn tau(&self) -> usize {
        let mut bound = self.lower_bound();
        loop {
            let mut tally = Tally::new(1, 0);
            self.search(0, 0, bound, &mut tally);
            if tally.count > 0 {
                return bound;
            }
            bound += 1;
        }
    }

    /// Number of transversals of size exactly `size`, given that none is
    /// smaller, capped at `stop_at`.
    fn count_at(&self, size: usize, stop_at: u64) -> u64 {
        let mut tally = Tally::new(stop_at, 0);
        self.search(0, 0, size, &mut tally);
        tally.count
    }
}

pub fn is_transversal(h: &UniformHypergraph, set: VertexSet) -> bool {
    h.edges().iter().all(|e| !e.is_disjoint(set))
}

pub fn transversal_number(h: &UniformHypergraph) -> usize {
    Enumerator { edges: h.edges(), skip: None }.tau()
}

/// τ together with the minimum transversals, keeping at most `limit` of
/// them (all when `None`); the count is always exact.
pub fn minimum_transversals(h: &UniformHypergraph, limit: Option<usize>) -> TransversalResult {
    let en = Enumerator { edges: h.edges(), skip: None };
    let tau = en.tau();
    let keep = limit.unwrap_or(usize::MAX);
    let mut tally = Tally::new(u64::MAX, keep);
    en.search(0, 0, tau, &mut tally);
    let mut minimum_transversals = tally.found;
    minimum_transversals.sort_unstable();
    TransversalResult {
        tau,
        truncated: (minimum_transversals.len() as u64) < tally.count,
        count: tally.count,
        minimum_transversals,
    }
}

const PARALLEL_THRESHOLD: usize = 64;

/// Whether deleting any edge lowers τ and leaves exactly one minimum
/// transversal. The witness of a failure is the colex-least offending edge.
pub fn is_uniquely_tau_critical(h: &UniformHypergraph) -> Result<Verdict> {
    if h.is_empty() {
        return Err(Error::invalid("τ-criticality needs at least one edge"));
    }
    let tau = transversal_number(h);
    Ok(critical_verdict(h, tau))
}

fn critical_verdict(h: &UniformHypergraph, tau: usize) -> Verdict {
    let check = |i: usize| -> Option<Verdict> {
        let en = Enumerator { edges: h.edges(), skip: Some(i) };
        let witness = Witness::Set(h.edges()[i]);
        match en.count_at(tau - 1, 2) {
            1 => None,
            0 => Some(Verdict::fail(FailureKind::NotCritical, witness)),
            _ => Some(Verdict::fail(FailureKind::NonUniqueTransversal, witness)),
        }
    };
    let m = h.edge_count();
    let bad = if m >= PARALLEL_THRESHOLD {
        (0..m).into_par_iter().find_map_first(check)
    } else {
        (0..m).find_map(check)
    };
    bad.unwrap_or_else(Verdict::pass)
}

/// The conditions a complement `H^c` must meet for `H` to be primitive
/// uniquely `K_{n-τ+1}^(k)`-saturated: no isolated vertex, transversal number
/// `tau`, uniquely τ-critical.
pub fn verify_tau_critical_complement(hc: &UniformHypergraph, tau: usize) -> Verdict {
    let isolated = hc.isolated_vertices();
    if let Some(v) = isolated.min() {
        return Verdict::fail(FailureKind::IsolatedVertex, Witness::Set(VertexSet::singleton(v)));
    }
    let result = minimum_transversals(hc, Some(1));
    if result.tau != tau {
        let example = result.minimum_transversals.first().copied().unwrap_or_default();
        return Verdict::fail(
            FailureKind::TransversalNumber { expected: tau, found: result.tau },
            Witness::Set(example),
        );
    }
    critical_verdict(hc, tau)
}

/// Compares the direct saturation verdict for `(h, r)` with the τ-critical
/// verdict on the complement. The two must always agree.
pub fn check_saturation_tau_equivalence(h: &UniformHypergraph, r: usize) -> Result<bool> {
    let direct = verify_uniquely_saturated(h, r)?.is_ok();
    let hc = complement_hypergraph(h);
    let via_tau = verify_tau_critical_complement(&hc, h.n() - r + 1).is_ok();
    Ok(direct == via_tau)
}

/// `C(k+τ-1, k-1) + C(k+τ-2, k-1)`: every `k`-uniform τ-critical hypergraph
/// without isolated vertices has fewer vertices than this.
pub fn tuza_bound(k: usize, tau: usize) -> u64 {
    assert!(k >= 1 && tau >= 1, "tuza_bound needs k ≥ 1 and τ ≥ 1");
    binomial(k + tau - 1, k - 1) + binomial(k + tau - 2, k - 1)
}

/// Smallest `n` from which no primitive uniquely `K_{n-ell}^(k)`-saturated
/// hypergraph exists.
pub fn nonexistence_bound(k: usize, ell: usize) -> u64 {
    tuza_bound(k, ell + 1)
}
