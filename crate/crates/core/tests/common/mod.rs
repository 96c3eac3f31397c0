//! Independent brute-force oracles over plain bitmasks.
#![allow(dead_code)]

use rand::Rng;
use uksat::{UniformHypergraph, VertexSet};

/// All `k`-subsets of `{1..n}` as masks (vertex `v` is bit `v - 1`), in colex order.
pub fn k_sets(n: usize, k: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect();
    out.sort_by_key(|&m| colex_key(m));
    out
}

fn colex_key(m: u64) -> Vec<u32> {
    let mut v: Vec<u32> = (0..64).filter(|b| m >> b & 1 == 1).collect();
    v.reverse();
    v
}

pub fn subsets_of(mask: u64, size: usize) -> impl Iterator<Item = u64> {
    let bits: Vec<u64> = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| 1u64 << b).collect();
    let m = bits.len();
    (0u64..1 << m).filter(move |c| c.count_ones() as usize == size).map(move |c| {
        (0..m).filter(|i| c >> i & 1 == 1).fold(0, |acc, i| acc | bits[i])
    })
}

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

pub struct Dense {
    pub n: usize,
    pub k: usize,
    present: Vec<bool>,
}

impl Dense {
    pub fn new(n: usize, k: usize, edges: &[u64]) -> Self {
        let mut present = vec![false; 1 << n];
        for &e in edges {
            present[e as usize] = true;
        }
        Dense { n, k, present }
    }

    pub fn from(h: &UniformHypergraph) -> Self {
        let edges: Vec<u64> = h.edges().iter().map(|e| e.bits()).collect();
        Dense::new(h.n(), h.k(), &edges)
    }

    pub fn has(&self, e: u64) -> bool {
        self.present[e as usize]
    }

    pub fn is_clique(&self, set: u64) -> bool {
        subsets_of(set, self.k).all(|e| self.has(e))
    }

    pub fn clique_number(&self) -> usize {
        (0u64..1 << self.n)
            .filter(|&m| self.is_clique(m))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

/// Primitive uniquely `K_r^(k)`-saturated, straight from the definition.
pub fn naive_saturated(h: &Dense, r: usize) -> bool {
    let (n, k) = (h.n, h.k);
    let all = full(n);
    if subsets_of(all, r).any(|c| h.is_clique(c)) {
        return false;
    }
    for e in k_sets(n, k) {
        if h.has(e) {
            continue;
        }
        let completions = subsets_of(all & !e, r - k)
            .filter(|&x| subsets_of(e | x, k).all(|f| f == e || h.has(f)))
            .count();
        if completions != 1 {
            return false;
        }
    }
    (1..=n).all(|v| k_sets(n, k).iter().any(|&e| e >> (v - 1) & 1 == 1 && !h.has(e)))
}

/// The three complementary-hypergraph properties, straight from the definition.
pub fn naive_complementary(n: usize, t: usize, s: usize, edges: &[u64]) -> bool {
    let w = t - s;
    let mut codeg = vec![0u32; 1 << n];
    for &e in edges {
        for sub in subsets_of(e, w) {
            codeg[sub as usize] += 1;
        }
    }
    if subsets_of(full(n), w).any(|x| codeg[x as usize] == 0) {
        return false;
    }
    if !edges
        .iter()
        .all(|&e| subsets_of(e, w).filter(|&x| codeg[x as usize] == 1).count() == 1)
    {
        return false;
    }
    (1..=n).all(|v| edges.iter().any(|&e| e >> (v - 1) & 1 == 0))
}

pub fn naive_tau(n: usize, edges: &[u64]) -> usize {
    (0..=n)
        .find(|&size| subsets_of(full(n), size).any(|t| edges.iter().all(|&e| e & t != 0)))
        .unwrap()
}

/// Number of minimum transversals.
pub fn naive_transversal_count(n: usize, edges: &[u64], size: usize) -> usize {
    subsets_of(full(n), size).filter(|&t| edges.iter().all(|&e| e & t != 0)).count()
}

/// Uniquely τ-critical with no isolated vertex and transversal number `tau`.
pub fn naive_tau_critical(n: usize, edges: &[u64], tau: usize) -> bool {
    if edges.is_empty() || edges.iter().fold(0, |a, &e| a | e) != full(n) {
        return false;
    }
    if naive_tau(n, edges) != tau {
        return false;
    }
    (0..edges.len()).all(|i| {
        let rest: Vec<u64> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        naive_transversal_count(n, &rest, tau - 1) == 1
    })
}

pub fn masks(h: &UniformHypergraph) -> Vec<u64> {
    h.edges().iter().map(|e| e.bits()).collect()
}

pub fn hypergraph(n: usize, k: usize, edges: &[u64]) -> UniformHypergraph {
    UniformHypergraph::new(n, k, edges.iter().map(|&e| VertexSet::from_bits(e))).unwrap()
}

pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, k: usize) -> UniformHypergraph {
    let p: f64 = rng.gen_range(0.05..0.98);
    let edges: Vec<u64> = k_sets(n, k).into_iter().filter(|_| rng.gen_bool(p)).collect();
    hypergraph(n, k, &edges)
}

/// Every `(n, k, r)` with `2 ≤ k < r < n ≤ max_n`.
pub fn cells(max_n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        for k in 2..n {
            for r in k + 1..n {
                out.push((n, k, r));
            }
        }
    }
    out
}
