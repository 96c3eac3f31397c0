//! Vertex sets, uniform hypergraphs and the set-algebra transforms between
//! the three views of a saturated hypergraph.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial, colex_rank, full_mask, subsets_of, KSubsets};
use crate::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A set of 1-based vertex labels drawn from `{1, …, 64}`.
///
/// The derived ordering is colex order, which is also the order edges are
/// stored and serialized in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    /// `{lo, …, hi}`, empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi || hi == 0 {
            return VertexSet(0);
        }
        let lo = lo.max(1);
        VertexSet(full_mask(hi) & !full_mask(lo - 1))
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSet(1 << (v - 1))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if !(1..=MAX_VERTICES).contains(&v) {
                return Err(Error::invalid(format!(
                    "vertex label {v} outside 1..={MAX_VERTICES}"
                )));
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        *self = *self | VertexSet::singleton(v);
    }

    pub fn remove(&mut self, v: usize) {
        *self = *self - VertexSet::singleton(v);
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement inside `{1, …, n}`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(full_mask(n) & !self.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// True when every member is at most `n`.
    pub fn within(self, n: usize) -> bool {
        self.0 & !full_mask(n) == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterator over the members of a [`VertexSet`].
#[derive(Debug, Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Vertices;

    fn into_iter(self) -> Vertices {
        self.iter()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A `k`-uniform hypergraph on the labeled vertex set `{1, …, n}`.
///
/// Edges are distinct, all of size `k`, and kept in colex order. The value is
/// immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
}

impl UniformHypergraph {
    pub fn new<I: IntoIterator<Item = VertexSet>>(n: usize, k: usize, edges: I) -> Result<Self> {
        check_shape(n, k)?;
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for e in &edges {
            if e.len() != k {
                return Err(Error::invalid(format!("edge {e} does not have {k} vertices")));
            }
            if !e.within(n) {
                return Err(Error::invalid(format!("edge {e} leaves the vertex set [1, {n}]")));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("repeated edge {}", w[0])));
        }
        Ok(UniformHypergraph { n, k, edges })
    }

    /// Build from lists of 1-based labels.
    pub fn from_lists<L: AsRef<[usize]>>(n: usize, k: usize, lists: &[L]) -> Result<Self> {
        let edges = lists
            .iter()
            .map(|l| VertexSet::from_vertices(l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, edges)
    }

    /// Caller guarantees sorted, distinct, `k`-sized edges inside `[n]`.
    pub(crate) fn from_sorted(n: usize, k: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == k && e.within(n)));
        UniformHypergraph { n, k, edges }
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        Ok(UniformHypergraph { n, k, edges: Vec::new() })
    }

    /// All `C(n, k)` edges.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        let edges = KSubsets::new(n, k).map(VertexSet).collect();
        Ok(UniformHypergraph { n, k, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Vertices lying in no edge.
    pub fn isolated_vertices(&self) -> VertexSet {
        let covered = self.edges.iter().fold(0u64, |acc, e| acc | e.bits());
        VertexSet(full_mask(self.n) & !covered)
    }

    /// `H - e`; unchanged when `e` is not an edge.
    pub fn without_edge(&self, e: VertexSet) -> Self {
        let edges = self.edges.iter().copied().filter(|&x| x != e).collect();
        UniformHypergraph { n: self.n, k: self.k, edges }
    }

    /// Vertices `{1..n}` relabeled by `perm`, where `perm[v - 1]` is the new
    /// label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n || VertexSet::from_vertices(perm.iter().copied())? != self.vertices() {
            return Err(Error::invalid("relabeling is not a permutation of the vertex set"));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| VertexSet::from_vertices(e.iter().map(|v| perm[v - 1])))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, self.k, edges)
    }
}

impl fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(n={}, k={}, ", self.n, self.k)?;
        f.debug_list().entries(&self.edges).finish()?;
        f.write_str(")")
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::invalid(format!("n = {n} exceeds the supported maximum {MAX_VERTICES}")));
    }
    if k < 1 || k > n {
        return Err(Error::invalid(format!("uniformity k = {k} must satisfy 1 ≤ k ≤ n = {n}")));
    }
    Ok(())
}

/// The parameter triple `(n, k, r)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProblemParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl ProblemParams {
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self> {
        if !(2 <= k && k < r && r < n) {
            return Err(Error::invalid(format!(
                "parameters must satisfy 2 ≤ k < r < n, got n = {n}, k = {k}, r = {r}"
            )));
        }
        if n > MAX_VERTICES {
            return Err(Error::invalid(format!("n = {n} exceeds {MAX_VERTICES}")));
        }
        Ok(ProblemParams { n, k, r })
    }

    /// From the complementary-hypergraph parameters `(n, t, s)`.
    pub fn from_complementary(n: usize, t: usize, s: usize) -> Result<Self> {
        if t >= n || s >= t {
            return Err(Error::invalid(format!(
                "complementary parameters must satisfy 1 ≤ s < t < n, got n = {n}, t = {t}, s = {s}"
            )));
        }
        Self::new(n, n - t, n - t + s)
    }

    /// Uniformity of the complementary hypergraph, `n - k`.
    pub fn t(&self) -> usize {
        self.n - self.k
    }

    /// Size of a completion, `r - k`.
    pub fn s(&self) -> usize {
        self.r - self.k
    }

    /// `n - r`, equal to `t - s`.
    pub fn ell(&self) -> usize {
        self.n - self.r
    }
}

/// Membership oracle for `k`-sets, dense by colex rank when that fits.
pub(crate) enum EdgeIndex<'a> {
    Dense(Vec<u64>),
    Sorted(&'a [VertexSet]),
}

const DENSE_LIMIT: u64 = 1 << 27;

impl<'a> EdgeIndex<'a> {
    pub(crate) fn new(h: &'a UniformHypergraph) -> Self {
        let total = binomial(h.n, h.k);
        if total <= DENSE_LIMIT {
            let mut bits = vec![0u64; (total as usize).div_ceil(64).max(1)];
            for e in &h.edges {
                let r = colex_rank(e.bits()) as usize;
                bits[r / 64] |= 1 << (r % 64);
            }
            EdgeIndex::Dense(bits)
        } else {
            EdgeIndex::Sorted(&h.edges)
        }
    }

    #[inline]
    pub(crate) fn contains(&self, set: u64) -> bool {
        match self {
            EdgeIndex::Dense(bits) => {
                let r = colex_rank(set) as usize;
                bits[r / 64] >> (r % 64) & 1 == 1
            }
            EdgeIndex::Sorted(edges) => edges.binary_search(&VertexSet(set)).is_ok(),
        }
    }
}

/// The `k`-uniform complement: same vertices, edge set `C([n], k) ∖ E(H)`.
pub fn complement_hypergraph(h: &UniformHypergraph) -> UniformHypergraph {
    let mut present = h.edges.iter().peekable();
    let mut edges = Vec::with_capacity((binomial(h.n, h.k) as usize).saturating_sub(h.edges.len()));
    for s in KSubsets::new(h.n, h.k) {
        let s = VertexSet(s);
        if present.peek() == Some(&&s) {
            present.next();
        } else {
            edges.push(s);
        }
    }
    UniformHypergraph::from_sorted(h.n, h.k, edges)
}

/// The `(n - k)`-uniform hypergraph whose edges are the complements of the
/// non-edges of `h`. Applying it twice returns `h`.
pub fn complementary_hypergraph(h: &UniformHypergraph) -> Result<UniformHypergraph> {
    if h.k == h.n {
        return Err(Error::invalid("complementary hypergraph needs k < n (t = n - k would be 0)"));
    }
    let t = h.n - h.k;
    let mut edges: Vec<VertexSet> = complement_hypergraph(h)
        .edges
        .into_iter()
        .map(|s| s.complement(h.n))
        .collect();
    edges.reverse();
    Ok(UniformHypergraph::from_sorted(h.n, t, edges))
}

/// Number of edges of `r` containing `s`.
pub fn codegree(r: &UniformHypergraph, s: VertexSet) -> Result<usize> {
    if s.len() > r.k {
        return Err(Error::invalid(format!(
            "codegree of a {}-set in a {}-uniform hypergraph",
            s.len(),
            r.k
        )));
    }
    Ok(r.edges.iter().filter(|e| s.is_subset(**e)).count())
}

/// Whether every `k`-set through `v` is an edge.
pub fn is_dominating_vertex(h: &UniformHypergraph, v: usize) -> Result<bool> {
    if !(1..=h.n).contains(&v) {
        return Err(Error::invalid(format!("vertex {v} outside 1..={}", h.n)));
    }
    Ok(h.degree(v) as u64 == binomial(h.n - 1, h.k - 1))
}

/// Some `r`-set all of whose `k`-subsets are edges, if one exists.
///
/// Exact. Vertices are added in increasing order and the candidate set is
/// filtered so that every candidate extends the current clique; the first
/// clique found is the lexicographically least one.
pub fn contains_clique(h: &UniformHypergraph, r: usize) -> Result<Option<VertexSet>> {
    if r < h.k || r > h.n {
        return Err(Error::invalid(format!(
            "clique size r = {r} must satisfy k = {} ≤ r ≤ n = {}",
            h.k, h.n
        )));
    }
    if h.edges.is_empty() {
        return Ok(None);
    }
    let index = EdgeIndex::new(h);
    let search = CliqueSearch { index: &index, k: h.k, r };
    let start = if h.k == 1 {
        h.edges.iter().fold(0, |acc, e| acc | e.bits())
    } else {
        full_mask(h.n)
    };
    Ok(search.extend(0, start).map(VertexSet))
}

struct CliqueSearch<'a, 'b> {
    index: &'a EdgeIndex<'b>,
    k: usize,
    r: usize,
}

impl CliqueSearch<'_, '_> {
    fn extend(&self, current: u64, candidates: u64) -> Option<u64> {
        let size = current.count_ones() as usize;
        if size == self.r {
            return Some(current);
        }
        let mut rest = candidates;
        while rest != 0 {
            if size + (rest.count_ones() as usize) < self.r {
                return None;
            }
            let v = rest & rest.wrapping_neg();
            rest ^= v;
            let grown = current | v;
            let mut next = 0u64;
            let mut ws = rest;
            while ws != 0 {
                let w = ws & ws.wrapping_neg();
                ws ^= w;
                if self.pair_extends(current, v | w) {
                    next |= w;
                }
            }
            if let Some(found) = self.extend(grown, next) {
                return Some(found);
            }
        }
        None
    }

    /// Every `k`-subset of `current ∪ pair` containing both vertices of
    /// `pair` is an edge.
    fn pair_extends(&self, current: u64, pair: u64) -> bool {
        if self.k < 2 {
            return true;
        }
        subsets_of(current, self.k - 2).all(|sub| self.index.contains(sub | pair))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> UniformHypergraph {
        UniformHypergraph::from_lists(5, 2, &[[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]]).unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::from_vertices([1, 3, 5]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0) && !s.contains(99));
        assert_eq!(s.complement(6).to_vec(), vec![2, 4, 6]);
        assert_eq!(s.to_string(), "{1,3,5}");
        assert_eq!(VertexSet::range(3, 5).to_vec(), vec![3, 4, 5]);
        assert!(VertexSet::range(4, 3).is_empty());
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(s.max(), Some(5));
        assert!(VertexSet::from_vertices([0]).is_err());
        assert!(VertexSet::from_vertices([65]).is_err());
    }

    #[test]
    fn rejects_malformed_hypergraphs() {
        assert!(UniformHypergraph::from_lists(4, 2, &[[1, 2], [1, 2]]).is_err());
        assert!(UniformHypergraph::from_lists(4, 2, &[vec![1, 2, 3]]).is_err());
        assert!(UniformHypergraph::from_lists(4, 2, &[[1, 5]]).is_err());
        assert!(UniformHypergraph::empty(3, 4).is_err());
        assert!(UniformHypergraph::empty(3, 0).is_err());
    }

    #[test]
    fn complement_examples() {
        let k4 = UniformHypergraph::complete(4, 2).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(complement_hypergraph(&k4).is_empty());

        let c = complement_hypergraph(&c5());
        let expected =
            UniformHypergraph::from_lists(5, 2, &[[1, 3], [3, 5], [2, 5], [2, 4], [1, 4]]).unwrap();
        assert_eq!(c, expected);

        let e = UniformHypergraph::empty(5, 3).unwrap();
        assert_eq!(complement_hypergraph(&e).edge_count(), 10);
    }

    #[test]
    fn complementary_of_c5() {
        let r = complementary_hypergraph(&c5()).unwrap();
        let expected = UniformHypergraph::from_lists(
            5,
            3,
            &[[2, 4, 5], [2, 3, 5], [1, 3, 5], [1, 3, 4], [1, 2, 4]],
        )
        .unwrap();
        assert_eq!(r, expected);
        assert_eq!(complementary_hypergraph(&r).unwrap(), c5());

        let full = UniformHypergraph::complete(6, 3).unwrap();
        assert!(complementary_hypergraph(&full).unwrap().is_empty());
        assert!(complementary_hypergraph(&UniformHypergraph::empty(4, 4).unwrap()).is_err());
    }

    #[test]
    fn codegree_examples() {
        let r = complementary_hypergraph(&c5()).unwrap();
        assert_eq!(codegree(&r, VertexSet::from_vertices([1, 3]).unwrap()).unwrap(), 2);
        let star = UniformHypergraph::from_lists(3, 2, &[[1, 2], [1, 3]]).unwrap();
        assert_eq!(codegree(&star, VertexSet::singleton(1)).unwrap(), 2);
        let empty = UniformHypergraph::empty(5, 3).unwrap();
        assert_eq!(codegree(&empty, VertexSet::singleton(2)).unwrap(), 0);
        assert!(codegree(&star, VertexSet::from_vertices([1, 2, 3]).unwrap()).is_err());
    }

    #[test]
    fn dominating_vertex_examples() {
        let full = UniformHypergraph::complete(5, 3).unwrap();
        assert!((1..=5).all(|v| is_dominating_vertex(&full, v).unwrap()));
        assert!(!is_dominating_vertex(&c5(), 1).unwrap());
        let star = UniformHypergraph::from_lists(5, 2, &[[1, 2], [1, 3], [1, 4], [1, 5]]).unwrap();
        assert!(is_dominating_vertex(&star, 1).unwrap());
        assert!(!is_dominating_vertex(&star, 2).unwrap());
        assert!(is_dominating_vertex(&star, 6).is_err());
        assert!(is_dominating_vertex(&star, 0).is_err());
    }

    #[test]
    fn clique_examples() {
        let full = UniformHypergraph::complete(6, 3).unwrap();
        assert_eq!(contains_clique(&full, 6).unwrap(), Some(VertexSet::full(6)));
        assert_eq!(contains_clique(&c5(), 3).unwrap(), None);
        assert_eq!(contains_clique(&c5(), 2).unwrap(), Some(VertexSet::from_vertices([1, 2]).unwrap()));
        assert!(contains_clique(&c5(), 1).is_err());
        assert!(contains_clique(&c5(), 6).is_err());

        // K_2 joined to an independent set of size 4: triangles, no K_4.
        let mut lists = vec![vec![1, 2]];
        for v in 3..=6 {
            lists.push(vec![1, v]);
            lists.push(vec![2, v]);
        }
        let ehm = UniformHypergraph::from_lists(6, 2, &lists).unwrap();
        assert_eq!(contains_clique(&ehm, 4).unwrap(), None);
        assert_eq!(contains_clique(&ehm, 3).unwrap(), Some(VertexSet::from_vertices([1, 2, 3]).unwrap()));
    }

    #[test]
    fn problem_params() {
        let p = ProblemParams::new(9, 4, 6).unwrap();
        assert_eq!((p.t(), p.s(), p.ell()), (5, 2, 3));
        assert_eq!(p.t() - p.s(), p.ell());
        assert_eq!(ProblemParams::from_complementary(9, 5, 2).unwrap(), p);
        assert!(ProblemParams::new(5, 1, 3).is_err());
        assert!(ProblemParams::new(5, 3, 5).is_err());
        assert!(ProblemParams::from_complementary(5, 2, 2).is_err());
    }
}
