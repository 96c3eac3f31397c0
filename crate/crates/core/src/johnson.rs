//! Johnson graphs `J(m, k)` and their colorings.
//!
//! The vertices of `J(m, k)` are the `k`-subsets of `[m]`, two of them
//! adjacent when they share `k - 1` elements. A color class is therefore a
//! family of `k`-sets no two of which meet in `k - 1` elements.

use std::collections::HashSet;

use serde::Serialize;

use crate::combinatorics::{binomial, colex_rank, full_mask, KSubsets};
use crate::hypercore::VertexSet;
use crate::{Error, Result};

/// Largest vertex count [`johnson_graph`] will materialize.
pub const MAX_JOHNSON_VERTICES: u64 = 1 << 22;

fn check_params(m: usize, k: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::invalid(format!("J(m, k) needs 0 < k ≤ m, got m = {m}, k = {k}")));
    }
    if m > 64 {
        return Err(Error::invalid(format!("m = {m} exceeds 64")));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct JohnsonGraph {
    m: usize,
    k: usize,
    vertices: Vec<VertexSet>,
    adjacency: Vec<Vec<u32>>,
}

pub fn johnson_graph(m: usize, k: usize) -> Result<JohnsonGraph> {
    check_params(m, k)?;
    let count = binomial(m, k);
    if count > MAX_JOHNSON_VERTICES {
        return Err(Error::invalid(format!("J({m}, {k}) has {count} vertices, too many to build")));
    }
    let vertices: Vec<VertexSet> = KSubsets::new(m, k).map(VertexSet::from_bits).collect();
    let ground = full_mask(m);
    let adjacency = vertices
        .iter()
        .map(|v| {
            let mut nbrs = Vec::with_capacity(k * (m - k));
            let inside = v.bits();
            let outside = ground & !inside;
            for x in VertexSet::from_bits(inside) {
                for y in VertexSet::from_bits(outside) {
                    let w = inside ^ (1 << (x - 1)) ^ (1 << (y - 1));
                    nbrs.push(colex_rank(w) as u32);
                }
            }
            nbrs.sort_unstable();
            nbrs
        })
        .collect();
    Ok(JohnsonGraph { m, k, vertices, adjacency })
}

impl JohnsonGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The `k`-sets, in colex order; a vertex's index is its colex rank.
    pub fn vertices(&self) -> &[VertexSet] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn are_adjacent(&self, a: VertexSet, b: VertexSet) -> bool {
        adjacent(a, b, self.k)
    }
}

fn adjacent(a: VertexSet, b: VertexSet, k: usize) -> bool {
    (a & b).len() + 1 == k
}

/// A partition of all `k`-subsets of `[m]` into independent sets of `J(m, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    ground: usize,
    block_size: usize,
    classes: Vec<Vec<VertexSet>>,
}

impl Coloring {
    /// Validates that `classes` is a partition of the `block_size`-subsets of
    /// `[ground]` into nonempty independent sets.
    pub fn new(ground: usize, block_size: usize, classes: Vec<Vec<VertexSet>>) -> Result<Self> {
        check_params(ground, block_size)?;
        let mut seen = HashSet::new();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::invalid(format!("color class {i} is empty")));
            }
            for &set in class {
                if set.len() != block_size || !set.within(ground) {
                    return Err(Error::invalid(format!(
                        "class {i} holds {set}, not a {block_size}-subset of [{ground}]"
                    )));
                }
                if !seen.insert(set) {
                    return Err(Error::invalid(format!("{set} appears in more than one class")));
                }
            }
        }
        let total = binomial(ground, block_size);
        if seen.len() as u64 != total {
            return Err(Error::invalid(format!(
                "classes cover {} of the {total} {block_size}-subsets of [{ground}]",
                seen.len()
            )));
        }
        let coloring = Coloring { ground, block_size, classes };
        if let Some((i, a, b)) = coloring.conflict() {
            return Err(Error::invalid(format!("class {i} holds adjacent sets {a} and {b}")));
        }
        Ok(coloring)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn classes(&self) -> &[Vec<VertexSet>] {
        &self.classes
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    /// First pair of sets sharing a class and `k - 1` elements.
    pub fn conflict(&self) -> Option<(usize, VertexSet, VertexSet)> {
        for (i, class) in self.classes.iter().enumerate() {
            for (j, &a) in class.iter().enumerate() {
                for &b in &class[j + 1..] {
                    if adjacent(a, b, self.block_size) {
                        return Some((i, a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_proper(&self) -> bool {
        self.conflict().is_none()
    }

    fn from_labels(ground: usize, block_size: usize, sets: &[VertexSet], labels: &[usize]) -> Self {
        let colors = labels.iter().max().map_or(0, |&c| c + 1);
        let mut classes = vec![Vec::new(); colors];
        for (&set, &c) in sets.iter().zip(labels) {
            classes[c].push(set);
        }
        classes.retain(|c| !c.is_empty());
        Coloring { ground, block_size, classes }
    }

    fn complemented(&self) -> Self {
        let classes = self
            .classes
            .iter()
            .map(|class| {
                let mut c: Vec<VertexSet> = class.iter().map(|s| s.complement(self.ground)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Coloring {
            ground: self.ground,
            block_size: self.ground - self.block_size,
            classes,
        }
    }
}

/// Colors each `k`-set by the sum of its elements mod `m`; classes are listed
/// by residue, empty residues dropped.
pub fn graham_sloane_coloring(m: usize, k: usize) -> Result<Coloring> {
    check_params(m, k)?;
    let sets: Vec<VertexSet> = KSubsets::new(m, k).map(VertexSet::from_bits).collect();
    let labels: Vec<usize> = sets.iter().map(|s| s.iter().sum::<usize>() % m).collect();
    Ok(Coloring::from_labels(m, k, &sets, &labels))
}

/// Optimal edge coloring of `K_m` for even `m` by the circle method.
fn one_factorization(m: usize) -> Coloring {
    debug_assert!(m % 2 == 0 && m >= 2);
    let rounds = m - 1;
    let pair = |a: usize, b: usize| VertexSet::singleton(a + 1) | VertexSet::singleton(b + 1);
    let classes = (0..rounds)
        .map(|r| {
            let mut class = vec![pair(r, m - 1)];
            for i in 1..m / 2 {
                class.push(pair((r + i) % rounds, (r + rounds - i) % rounds));
            }
            class.sort_unstable();
            class
        })
        .collect();
    Coloring { ground: m, block_size: 2, classes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChromaticStatus {
    Exact,
    UpperBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticNumber {
    pub value: usize,
    pub status: ChromaticStatus,
    /// A coloring with `value` classes.
    pub coloring: Coloring,
    /// Search nodes spent; zero for closed forms.
    pub nodes: u64,
}

/// `χ(m, k)`: closed forms where known, otherwise exact branch and bound
/// within `budget` nodes, otherwise the Graham–Sloane upper bound.
pub fn chromatic_number(m: usize, k: usize, budget: u64) -> Result<ChromaticNumber> {
    check_params(m, k)?;
    let exact = |coloring: Coloring| ChromaticNumber {
        value: coloring.num_colors(),
        status: ChromaticStatus::Exact,
        coloring,
        nodes: 0,
    };
    if k == m || k == 1 || k + 1 == m {
        return Ok(exact(graham_sloane_coloring(m, k)?));
    }
    if k == 2 {
        return Ok(exact(if m % 2 == 0 { one_factorization(m) } else { graham_sloane_coloring(m, 2)? }));
    }
    if k == m - 2 {
        let mut res = chromatic_number(m, 2, budget)?;
        res.coloring = res.coloring.complemented();
        return Ok(res);
    }
    branch_and_bound_chromatic(m, k, budget)
}

/// Exact `χ(m, k)` by DSATUR branch and bound, ignoring closed forms. A clique
/// is precolored and the Graham–Sloane coloring is the initial incumbent.
pub fn branch_and_bound_chromatic(m: usize, k: usize, budget: u64) -> Result<ChromaticNumber> {
    check_params(m, k)?;
    if k == m {
        let coloring = graham_sloane_coloring(m, k)?;
        return Ok(ChromaticNumber { value: 1, status: ChromaticStatus::Exact, coloring, nodes: 0 });
    }
    if 2 * k > m {
        let mut res = branch_and_bound_chromatic(m, m - k, budget)?;
        res.coloring = res.coloring.complemented();
        return Ok(res);
    }
    let graph = johnson_graph(m, k)?;
    let incumbent = graham_sloane_coloring(m, k)?;
    if incumbent.num_colors() > 64 {
        return Err(Error::invalid("more than 64 colors are not supported"));
    }

    // the sets through a common (k-1)-core form a clique of size m - k + 1
    let core = full_mask(k - 1);
    let clique: Vec<u64> = (k..=m).map(|x| core | 1 << (x - 1)).collect();

    let n = graph.vertex_count();
    let mut dsatur = Dsatur {
        graph: &graph,
        color: vec![UNCOLORED; n],
        counts: vec![[0u16; 64]; n],
        saturation: vec![0u64; n],
        best: incumbent.num_colors(),
        best_labels: None,
        lower: clique.len(),
        nodes: 0,
        budget,
        aborted: false,
    };
    for (c, &set) in clique.iter().enumerate() {
        dsatur.assign(colex_rank(set) as usize, c as u8);
    }
    if dsatur.best > dsatur.lower {
        dsatur.search(clique.len(), clique.len());
    }

    let (coloring, status) = match dsatur.best_labels {
        Some(labels) => {
            let labels: Vec<usize> = labels.iter().map(|&c| c as usize).collect();
            (Coloring::from_labels(m, k, graph.vertices(), &labels), ChromaticStatus::Exact)
        }
        None => (incumbent, ChromaticStatus::Exact),
    };
    if dsatur.aborted {
        let fallback = graham_sloane_coloring(m, k)?;
        return Ok(ChromaticNumber {
            value: fallback.num_colors(),
            status: ChromaticStatus::UpperBoundOnly,
            coloring: fallback,
            nodes: dsatur.nodes,
        });
    }
    Ok(ChromaticNumber {
        value: coloring.num_colors(),
        status,
        coloring,
        nodes: dsatur.nodes,
    })
}

const UNCOLORED: u8 = u8::MAX;

struct Dsatur<'a> {
    graph: &'a JohnsonGraph,
    color: Vec<u8>,
    counts: Vec<[u16; 64]>,
    saturation: Vec<u64>,
    best: usize,
    best_labels: Option<Vec<u8>>,
    lower: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: u8) {
        self.color[v] = c;
        for &w in self.graph.neighbors(v) {
            let w = w as usize;
            self.counts[w][c as usize] += 1;
            self.saturation[w] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for &w in self.graph.neighbors(v) {
            let w = w as usize;
            self.counts[w][c as usize] -= 1;
            if self.counts[w][c as usize] == 0 {
                self.saturation[w] &= !(1 << c);
            }
        }
    }

    /// Uncolored vertex with the most distinct neighbor colors, lowest index
    /// on ties.
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_sat = -1i32;
        for (v, &c) in self.color.iter().enumerate() {
            if c == UNCOLORED {
                let sat = self.saturation[v].count_ones() as i32;
                if sat > best_sat {
                    best = v;
                    best_sat = sat;
                }
            }
        }
        best
    }

    fn search(&mut self, colored: usize, used: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if colored == self.color.len() {
            self.best = used;
            self.best_labels = Some(self.color.clone());
            return;
        }
        let v = self.select();
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.saturation[v] & (1 << c) != 0 {
                continue;
            }
            self.assign(v, c as u8);
            self.search(colored + 1, used.max(c + 1));
            self.unassign(v);
            if self.aborted || self.best <= self.lower {
                return;
            }
            if c + 1 >= self.best - 1 {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied()).unwrap()
    }

    #[test]
    fn small_johnson_graphs() {
        let j42 = johnson_graph(4, 2).unwrap();
        assert_eq!(j42.vertex_count(), 6);
        assert!((0..6).all(|i| j42.degree(i) == 4));
        // octahedron: each vertex misses exactly its complement
        for (i, &v) in j42.vertices().iter().enumerate() {
            let c = colex_rank(v.complement(4).bits()) as u32;
            assert!(!j42.neighbors(i).contains(&c));
        }
        let j51 = johnson_graph(5, 1).unwrap();
        assert!((0..5).all(|i| j51.degree(i) == 4));
        let j52 = johnson_graph(5, 2).unwrap();
        assert_eq!(j52.vertex_count(), 10);
        assert!((0..10).all(|i| j52.degree(i) == 6));
        assert!(johnson_graph(3, 4).is_err());
        assert!(johnson_graph(3, 0).is_err());
    }

    #[test]
    fn graham_sloane_examples() {
        let c = graham_sloane_coloring(4, 2).unwrap();
        assert_eq!(
            c.classes(),
            &[vec![set(&[1, 3])], vec![set(&[2, 3]), set(&[1, 4])], vec![set(&[2, 4])], vec![set(&[1, 2]), set(&[3, 4])]]
        );
        assert_eq!(graham_sloane_coloring(3, 3).unwrap().num_colors(), 1);
        let c = graham_sloane_coloring(5, 2).unwrap();
        assert_eq!(c.num_colors(), 5);
        for class in c.classes() {
            assert_eq!(class.len(), 2);
            assert!(class[0].is_disjoint(class[1]));
        }
    }

    #[test]
    fn closed_forms() {
        let chi = |m, k| chromatic_number(m, k, 1_000_000).unwrap();
        assert_eq!(chi(4, 2).value, 3);
        assert_eq!(chi(5, 2).value, 5);
        assert_eq!(chi(6, 2).value, 5);
        assert_eq!(chi(7, 7).value, 1);
        assert_eq!(chi(7, 6).value, 7);
        assert_eq!(chi(7, 1).value, 7);
        assert_eq!(chi(6, 4).value, 5);
        for m in 2..=10 {
            let c = chi(m, 2);
            assert_eq!(c.status, ChromaticStatus::Exact);
            let rebuilt = Coloring::new(m, 2, c.coloring.classes().to_vec()).unwrap();
            assert_eq!(rebuilt.num_colors(), c.value);
        }
    }

    #[test]
    fn branch_and_bound_handles_single_vertex_and_complete_graphs() {
        for m in 1..=5 {
            let one = branch_and_bound_chromatic(m, m, 10).unwrap();
            assert_eq!((one.value, one.status), (1, ChromaticStatus::Exact));
            let star = branch_and_bound_chromatic(m, 1, 1_000).unwrap();
            assert_eq!((star.value, star.status), (m, ChromaticStatus::Exact));
        }
    }

    #[test]
    fn coloring_validation() {
        assert!(Coloring::new(3, 2, vec![vec![set(&[1, 2]), set(&[1, 3])], vec![set(&[2, 3])]]).is_err());
        assert!(Coloring::new(3, 2, vec![vec![set(&[1, 2])], vec![set(&[2, 3])]]).is_err());
        assert!(Coloring::new(3, 2, vec![vec![set(&[1, 2])], vec![], vec![set(&[1, 3])], vec![set(&[2, 3])]]).is_err());
        assert!(Coloring::new(3, 2, vec![vec![set(&[1, 2])], vec![set(&[1, 3])], vec![set(&[2, 3])]]).is_ok());
    }

    #[test]
    fn exhausted_budget_reports_upper_bound() {
        let res = branch_and_bound_chromatic(7, 3, 1).unwrap();
        assert_eq!(res.status, ChromaticStatus::UpperBoundOnly);
        assert_eq!(res.value, 7);
    }
}
