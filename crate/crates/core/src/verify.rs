//! The two saturation verifiers.
//!
//! [`verify_uniquely_saturated`] works straight from the definition: no
//! `K_r^(k)`, every non-edge has exactly one completion, no dominating vertex.
//! [`verify_complementary`] checks the complementary hypergraph instead:
//!
//! 1. every `(t - s)`-set is covered by an edge;
//! 2. every edge contains exactly one `(t - s)`-subset of codegree one;
//! 3. no vertex lies in every edge.
//!
//! The two share no code beyond the hypergraph type, so each serves as an
//! oracle for the other.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binomial, colex_rank, colex_unrank, full_mask, subsets_of};
use crate::hypercore::{complement_hypergraph, contains_clique, EdgeIndex, UniformHypergraph, VertexSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    CliqueExists,
    NoCompletion,
    MultipleCompletions,
    DominatingVertex,
    /// One of the three complementary-hypergraph properties, numbered 1–3.
    PropertyViolation(u8),
    IsolatedVertex,
    TransversalNumber { expected: usize, found: usize },
    /// Removing the witness edge leaves τ unchanged.
    NotCritical,
    /// Removing the witness edge leaves more than one minimum transversal.
    NonUniqueTransversal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Witness {
    Set(VertexSet),
    Pair(VertexSet, VertexSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub witness: Witness,
}

/// Outcome of a check. A failure always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    failure: Option<Failure>,
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Verdict", 2)?;
        st.serialize_field("ok", &self.is_ok())?;
        st.serialize_field("failure", &self.failure)?;
        st.end()
    }
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { failure: None }
    }

    pub fn fail(kind: FailureKind, witness: Witness) -> Self {
        Verdict { failure: Some(Failure { kind, witness }) }
    }

    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failure(&self) -> Option<&Failure> {
        self.failure.as_ref()
    }

    pub fn kind(&self) -> Option<FailureKind> {
        self.failure.as_ref().map(|f| f.kind)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("ok"),
            Some(failure) => write!(f, "{failure}"),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = match self.witness {
            Witness::Set(a) => (a, None),
            Witness::Pair(a, b) => (a, Some(b)),
        };
        match self.kind {
            FailureKind::CliqueExists => write!(f, "clique on {a}"),
            FailureKind::NoCompletion => write!(f, "non-edge {a} has no completion"),
            FailureKind::MultipleCompletions => match b {
                Some(b) => write!(f, "non-edge {a} has several completions, e.g. {b}"),
                None => write!(f, "non-edge {a} has several completions"),
            },
            FailureKind::DominatingVertex => write!(f, "dominating vertex {}", fmt_vertex(a)),
            FailureKind::PropertyViolation(1) => write!(f, "Property 1, uncovered set {a}"),
            FailureKind::PropertyViolation(2) => write!(f, "Property 2, edge {a}"),
            FailureKind::PropertyViolation(3) => write!(f, "Property 3, vertex {}", fmt_vertex(a)),
            FailureKind::PropertyViolation(p) => write!(f, "Property {p}, {a}"),
            FailureKind::IsolatedVertex => write!(f, "isolated vertex {}", fmt_vertex(a)),
            FailureKind::TransversalNumber { expected, found } => {
                write!(f, "transversal number {found} (expected {expected}), e.g. {a}")
            }
            FailureKind::NotCritical => write!(f, "removing edge {a} leaves τ unchanged"),
            FailureKind::NonUniqueTransversal => {
                write!(f, "removing edge {a} leaves several minimum transversals")
            }
        }
    }
}

fn fmt_vertex(s: VertexSet) -> String {
    match s.len() {
        1 => s.min().unwrap().to_string(),
        _ => s.to_string(),
    }
}

/// Every `s`-set `T` outside `non_edge` such that all `k`-subsets of
/// `non_edge ∪ T` other than `non_edge` are edges of `h`.
pub fn completions(h: &UniformHypergraph, non_edge: VertexSet, s: usize) -> Result<Vec<VertexSet>> {
    check_non_edge(h, non_edge)?;
    if s == 0 {
        return Err(Error::invalid("completion size s must be at least 1"));
    }
    let index = EdgeIndex::new(h);
    let finder = CompletionFinder { index: &index, k: h.k(), s };
    let mut found = Vec::new();
    finder.search(non_edge.bits(), 0, full_mask(h.n()) & !non_edge.bits(), usize::MAX, &mut found);
    Ok(found.into_iter().map(VertexSet::from_bits).collect())
}

fn check_non_edge(h: &UniformHypergraph, set: VertexSet) -> Result<()> {
    if set.len() != h.k() || !set.within(h.n()) {
        return Err(Error::invalid(format!("{set} is not a {}-subset of [{}]", h.k(), h.n())));
    }
    if h.contains_edge(set) {
        return Err(Error::invalid(format!("{set} is an edge; completions are defined for non-edges")));
    }
    Ok(())
}

struct CompletionFinder<'a, 'b> {
    index: &'a EdgeIndex<'b>,
    k: usize,
    s: usize,
}

impl CompletionFinder<'_, '_> {
    /// Grows `partial` with vertices of `allowed` in increasing order; stops
    /// once `found` holds `limit` completions. Each new vertex `x` is checked
    /// against every `k`-set made of `x` and `k - 1` earlier vertices, so
    /// every `k`-subset meeting `T` is checked exactly once.
    fn search(&self, base: u64, partial: u64, allowed: u64, limit: usize, found: &mut Vec<u64>) {
        let depth = partial.count_ones() as usize;
        if depth == self.s {
            found.push(partial);
            return;
        }
        let mut rest = allowed;
        while rest != 0 && found.len() < limit {
            if depth + (rest.count_ones() as usize) < self.s {
                return;
            }
            let x = rest & rest.wrapping_neg();
            rest ^= x;
            let so_far = base | partial;
            if subsets_of(so_far, self.k - 1).all(|sub| self.index.contains(sub | x)) {
                self.search(base, partial | x, rest, limit, found);
            }
        }
    }
}

const PARALLEL_THRESHOLD: usize = 256;

/// Direct check that `h` is a primitive uniquely `K_r^(k)`-saturated
/// hypergraph. Failures report the least violator: the lexicographically
/// first clique, the colex-least bad non-edge, the smallest dominating vertex.
pub fn verify_uniquely_saturated(h: &UniformHypergraph, r: usize) -> Result<Verdict> {
    let (n, k) = (h.n(), h.k());
    if !(k < r && r <= n) {
        return Err(Error::invalid(format!("need k < r ≤ n, got k = {k}, r = {r}, n = {n}")));
    }
    if let Some(clique) = contains_clique(h, r)? {
        return Ok(Verdict::fail(FailureKind::CliqueExists, Witness::Set(clique)));
    }

    let s = r - k;
    let non_edges = complement_hypergraph(h);
    let index = EdgeIndex::new(h);
    let finder = CompletionFinder { index: &index, k, s };
    let check = |&non_edge: &VertexSet| -> Option<Verdict> {
        let mut found = Vec::with_capacity(2);
        let allowed = full_mask(n) & !non_edge.bits();
        finder.search(non_edge.bits(), 0, allowed, 2, &mut found);
        match found.len() {
            1 => None,
            0 => Some(Verdict::fail(FailureKind::NoCompletion, Witness::Set(non_edge))),
            _ => Some(Verdict::fail(
                FailureKind::MultipleCompletions,
                Witness::Pair(non_edge, VertexSet::from_bits(found[1])),
            )),
        }
    };
    let bad = if non_edges.edge_count() >= PARALLEL_THRESHOLD {
        non_edges.edges().par_iter().find_map_first(check)
    } else {
        non_edges.edges().iter().find_map(check)
    };
    if let Some(verdict) = bad {
        return Ok(verdict);
    }

    // A vertex is dominating exactly when no non-edge contains it.
    let touched = non_edges.edges().iter().fold(0u64, |acc, e| acc | e.bits());
    let dominating = full_mask(n) & !touched;
    if dominating != 0 {
        let v = VertexSet::from_bits(dominating & dominating.wrapping_neg());
        return Ok(Verdict::fail(FailureKind::DominatingVertex, Witness::Set(v)));
    }
    Ok(Verdict::pass())
}

/// Codegree counts (capped at 2) for every `w`-subset of `[n]`.
enum CodegreeTable {
    Dense(Vec<u8>),
    Sparse(HashMap<u64, u8>),
}

impl CodegreeTable {
    fn build(r: &UniformHypergraph, w: usize) -> Self {
        let total = binomial(r.n(), w);
        if total <= 1 << 26 {
            let mut counts = vec![0u8; total as usize];
            for e in r.edges() {
                for sub in subsets_of(e.bits(), w) {
                    let c = &mut counts[colex_rank(sub) as usize];
                    *c = (*c + 1).min(2);
                }
            }
            CodegreeTable::Dense(counts)
        } else {
            let mut counts = HashMap::new();
            for e in r.edges() {
                for sub in subsets_of(e.bits(), w) {
                    let c = counts.entry(sub).or_insert(0u8);
                    *c = (*c + 1).min(2);
                }
            }
            CodegreeTable::Sparse(counts)
        }
    }

    fn get(&self, set: u64) -> u8 {
        match self {
            CodegreeTable::Dense(c) => c[colex_rank(set) as usize],
            CodegreeTable::Sparse(c) => c.get(&set).copied().unwrap_or(0),
        }
    }

    fn least_uncovered(&self, n: usize, w: usize) -> Option<u64> {
        match self {
            CodegreeTable::Dense(c) => c.iter().position(|&x| x == 0).map(|i| colex_unrank(i as u64, w)),
            CodegreeTable::Sparse(c) => {
                crate::combinatorics::KSubsets::new(n, w).find(|s| !c.contains_key(s))
            }
        }
    }
}

/// Three-property check of a `t`-uniform complementary hypergraph with
/// completion size `s`. Properties are tested in order 1, 2, 3 and the least
/// violator of the first failing property is reported.
pub fn verify_complementary(r: &UniformHypergraph, t: usize, s: usize) -> Result<Verdict> {
    if r.k() != t {
        return Err(Error::invalid(format!("hypergraph is {}-uniform, expected t = {t}", r.k())));
    }
    if !(1 <= s && s < t && t < r.n()) {
        return Err(Error::invalid(format!(
            "need 1 ≤ s < t < n, got s = {s}, t = {t}, n = {}",
            r.n()
        )));
    }
    let n = r.n();
    let w = t - s;
    let table = CodegreeTable::build(r, w);

    if let Some(uncovered) = table.least_uncovered(n, w) {
        return Ok(Verdict::fail(
            FailureKind::PropertyViolation(1),
            Witness::Set(VertexSet::from_bits(uncovered)),
        ));
    }

    for &e in r.edges() {
        let private = subsets_of(e.bits(), w).filter(|&sub| table.get(sub) == 1).take(2).count();
        if private != 1 {
            return Ok(Verdict::fail(FailureKind::PropertyViolation(2), Witness::Set(e)));
        }
    }

    let common = r.edges().iter().fold(full_mask(n), |acc, e| acc & e.bits());
    if common != 0 {
        let v = VertexSet::from_bits(common & common.wrapping_neg());
        return Ok(Verdict::fail(FailureKind::PropertyViolation(3), Witness::Set(v)));
    }
    Ok(Verdict::pass())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::hypercore::complementary_hypergraph;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied()).unwrap()
    }

    fn c5() -> UniformHypergraph {
        UniformHypergraph::from_lists(5, 2, &[[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]]).unwrap()
    }

    pub(crate) fn petersen() -> UniformHypergraph {
        // outer 5-cycle 1..5, spokes i -- i+5, inner pentagram
        let mut lists = Vec::new();
        for i in 0..5 {
            lists.push([i + 1, (i + 1) % 5 + 1]);
            lists.push([i + 1, i + 6]);
            lists.push([i + 6, (i + 2) % 5 + 6]);
        }
        UniformHypergraph::from_lists(10, 2, &lists).unwrap()
    }

    #[test]
    fn completions_examples() {
        let c = completions(&c5(), set(&[1, 3]), 1).unwrap();
        assert_eq!(c, vec![set(&[2])]);

        let s = set(&[2, 4]);
        let almost = UniformHypergraph::new(
            6,
            2,
            crate::combinatorics::KSubsets::new(6, 2).map(VertexSet::from_bits).filter(|&e| e != s),
        )
        .unwrap();
        let c = completions(&almost, s, 1).unwrap();
        assert_eq!(c, vec![set(&[1]), set(&[3]), set(&[5]), set(&[6])]);

        let empty = UniformHypergraph::empty(5, 2).unwrap();
        assert!(completions(&empty, set(&[1, 2]), 1).unwrap().is_empty());
        assert!(completions(&empty, set(&[1, 2]), 2).unwrap().is_empty());
        assert!(completions(&c5(), set(&[1, 2]), 1).is_err());
        assert!(completions(&c5(), set(&[1, 3]), 0).is_err());
    }

    #[test]
    fn moore_graphs_are_uniquely_triangle_saturated() {
        assert!(verify_uniquely_saturated(&c5(), 3).unwrap().is_ok());
        assert!(verify_uniquely_saturated(&petersen(), 3).unwrap().is_ok());
    }

    #[test]
    fn clique_joined_to_independent_set_has_dominating_vertices() {
        let mut lists = vec![vec![1, 2]];
        for v in 3..=6 {
            lists.push(vec![1, v]);
            lists.push(vec![2, v]);
        }
        let h = UniformHypergraph::from_lists(6, 2, &lists).unwrap();
        let v = verify_uniquely_saturated(&h, 4).unwrap();
        assert_eq!(v.kind(), Some(FailureKind::DominatingVertex));
        assert_eq!(v.failure().unwrap().witness, Witness::Set(set(&[1])));
    }

    #[test]
    fn saturated_failure_kinds() {
        let k5 = UniformHypergraph::complete(5, 2).unwrap();
        let v = verify_uniquely_saturated(&k5, 3).unwrap();
        assert_eq!(v.failure().unwrap().witness, Witness::Set(set(&[1, 2, 3])));

        let empty = UniformHypergraph::empty(5, 2).unwrap();
        let v = verify_uniquely_saturated(&empty, 3).unwrap();
        assert_eq!(v.failure().unwrap().kind, FailureKind::NoCompletion);
        assert_eq!(v.failure().unwrap().witness, Witness::Set(set(&[1, 2])));

        // C4 plus a chord: adding the other chord makes two triangles
        let c4 = UniformHypergraph::from_lists(4, 2, &[[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
        let v = verify_uniquely_saturated(&c4, 3).unwrap();
        assert_eq!(v.kind(), Some(FailureKind::MultipleCompletions));
        assert_eq!(v.failure().unwrap().witness, Witness::Pair(set(&[1, 3]), set(&[4])));

        assert!(verify_uniquely_saturated(&c5(), 2).is_err());
        assert!(verify_uniquely_saturated(&c5(), 6).is_err());
    }

    #[test]
    fn r_equal_n_never_passes() {
        let k5 = UniformHypergraph::complete(5, 2).unwrap();
        let s = set(&[1, 2]);
        let minus_one = k5.without_edge(s);
        let v = verify_uniquely_saturated(&minus_one, 5).unwrap();
        assert_eq!(v.kind(), Some(FailureKind::DominatingVertex));
        let v = verify_uniquely_saturated(&k5, 5).unwrap();
        assert_eq!(v.kind(), Some(FailureKind::CliqueExists));
    }

    #[test]
    fn complementary_examples() {
        let double_star = UniformHypergraph::from_lists(6, 2, &[[1, 2], [1, 3], [4, 6], [5, 6]]).unwrap();
        assert!(verify_complementary(&double_star, 2, 1).unwrap().is_ok());

        let star = UniformHypergraph::from_lists(4, 2, &[[1, 2], [1, 3], [1, 4]]).unwrap();
        let v = verify_complementary(&star, 2, 1).unwrap();
        assert_eq!(v.kind(), Some(FailureKind::PropertyViolation(3)));
        assert_eq!(v.to_string(), "Property 3, vertex 1");

        let r = complementary_hypergraph(&c5()).unwrap();
        assert!(verify_complementary(&r, 3, 1).unwrap().is_ok());

        let path = UniformHypergraph::from_lists(4, 2, &[[1, 2], [2, 3]]).unwrap();
        let v = verify_complementary(&path, 2, 1).unwrap();
        assert_eq!(v.failure().unwrap().witness, Witness::Set(set(&[4])));

        let p4 = UniformHypergraph::from_lists(4, 2, &[[1, 2], [2, 3], [3, 4]]).unwrap();
        let v = verify_complementary(&p4, 2, 1).unwrap();
        assert_eq!(v.kind(), Some(FailureKind::PropertyViolation(2)));
        assert_eq!(v.failure().unwrap().witness, Witness::Set(set(&[2, 3])));

        assert!(verify_complementary(&star, 3, 1).is_err());
        assert!(verify_complementary(&star, 2, 2).is_err());
    }
}
