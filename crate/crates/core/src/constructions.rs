//! Explicit families: the double star, the τ-critical hypergraphs built from
//! Johnson-graph colorings, and the near-complete family with `n - r = 1`.
//!
//! Every output is re-verified before it is returned. A construction that
//! fails its own verifier yields [`Error::ConstructionDefect`].

use serde::Serialize;

use crate::combinatorics::{binomial, full_mask, subsets_of};
use crate::hypercore::{complement_hypergraph, UniformHypergraph, VertexSet, MAX_VERTICES};
use crate::johnson::{chromatic_number, graham_sloane_coloring, ChromaticStatus, Coloring};
use crate::transversal::verify_tau_critical_complement;
use crate::verify::{verify_complementary, verify_uniquely_saturated};
use crate::{Error, Result};

/// Node budget for the exact `χ` used when no coloring is supplied.
pub const DEFAULT_CHROMATIC_BUDGET: u64 = 2_000_000;

fn require(ok: bool, inequality: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("requires {}", inequality.into())))
    }
}

/// The complementary hypergraph `R` of the double star: two `t`-uniform stars
/// with centers `[s]` and `{n-s+1, …, n}`.
pub fn double_star(n: usize, k: usize, r: usize) -> Result<UniformHypergraph> {
    require(k >= 4, format!("k ≥ 4 (got k = {k})"))?;
    require(k < r && r <= 2 * k - 3, format!("k < r ≤ 2k−3 (got k = {k}, r = {r})"))?;
    require(n > r, format!("n > r (got n = {n}, r = {r})"))?;
    require(n <= MAX_VERTICES, format!("n ≤ {MAX_VERTICES} (got n = {n})"))?;

    let t = n - k;
    let s = r - k;
    let w = t - s;
    let center_a = full_mask(s);
    let center_b = full_mask(n) & !full_mask(n - s);
    // {s+1, …, n} and {n-t, …, n-s} as bit masks
    let pool_a = full_mask(n) & !full_mask(s);
    let pool_b = full_mask(n - s) & !full_mask(n - t - 1);
    let low = full_mask(n - t - 1);

    let star_a = subsets_of(pool_a, w).filter(|&x| x & low != 0).map(|x| center_a | x);
    let star_b = subsets_of(pool_b, w).map(|x| center_b | x);
    let edges = star_a.chain(star_b).map(VertexSet::from_bits);
    let rh = UniformHypergraph::new(n, t, edges)?;

    let verdict = verify_complementary(&rh, t, s)?;
    if !verdict.is_ok() {
        return Err(Error::ConstructionDefect(format!(
            "double star for (n, k, r) = ({n}, {k}, {r}) failed: {verdict}"
        )));
    }
    Ok(rh)
}

/// The data behind [`tau_critical_construction`]: a core `A = [ℓ+k-1]`, one
/// outer vertex `b_i` per refined color class of the `(k-1)`-subsets of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauConstructionPlan {
    pub k: usize,
    pub ell: usize,
    pub n: usize,
    /// Number of classes of the base coloring.
    pub u: usize,
    /// Classes added by refinement.
    pub w: usize,
    pub a: VertexSet,
    pub b: VertexSet,
    pub classes: Vec<Vec<VertexSet>>,
    /// Whether `u` is the exact chromatic number.
    pub exact_chromatic: bool,
}

impl TauConstructionPlan {
    /// `E_i = { S ∪ {b_i} : S ∈ A'_i }`.
    pub fn edges(&self) -> Vec<VertexSet> {
        let core = self.a.len();
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, class)| {
                let b = VertexSet::singleton(core + i + 1);
                class.iter().map(move |&s| s | b)
            })
            .collect()
    }
}

/// The admissible `n` for given `k`, `ℓ` and a coloring with `u` classes.
pub fn tau_construction_range(k: usize, ell: usize, u: usize) -> (usize, usize) {
    let m = ell + k - 1;
    (u + m, binomial(m, k - 1) as usize + m)
}

fn base_coloring(k: usize, ell: usize, coloring: Option<&Coloring>) -> Result<(Coloring, bool)> {
    let m = ell + k - 1;
    match coloring {
        Some(c) => {
            if c.ground() != m || c.block_size() != k - 1 {
                return Err(Error::invalid(format!(
                    "coloring of J({}, {}) supplied, J({m}, {}) needed",
                    c.ground(),
                    c.block_size(),
                    k - 1
                )));
            }
            if let Some((i, a, b)) = c.conflict() {
                return Err(Error::invalid(format!("class {i} holds adjacent sets {a} and {b}")));
            }
            Ok((c.clone(), false))
        }
        None => {
            let chi = chromatic_number(m, k - 1, DEFAULT_CHROMATIC_BUDGET)?;
            match chi.status {
                ChromaticStatus::Exact => Ok((chi.coloring, true)),
                ChromaticStatus::UpperBoundOnly => Ok((graham_sloane_coloring(m, k - 1)?, false)),
            }
        }
    }
}

/// Splits classes until there are `target` of them: the largest class (first
/// on ties) gives up its colex-largest set to a new singleton class.
fn refine(mut classes: Vec<Vec<VertexSet>>, target: usize) -> Vec<Vec<VertexSet>> {
    for class in &mut classes {
        class.sort_unstable();
    }
    while classes.len() < target {
        let (largest, _) = classes
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|(_, c)| c.len())
            .expect("at least one class");
        let moved = classes[largest].pop().expect("class of size at least 2");
        classes.push(vec![moved]);
    }
    classes
}

pub fn tau_construction_plan(
    k: usize,
    ell: usize,
    n: usize,
    coloring: Option<&Coloring>,
) -> Result<TauConstructionPlan> {
    require(k >= 3, format!("k ≥ 3 (got k = {k})"))?;
    require(ell >= 1, format!("ℓ ≥ 1 (got ℓ = {ell})"))?;
    let m = ell + k - 1;
    require(m <= MAX_VERTICES, format!("ℓ+k−1 ≤ {MAX_VERTICES}"))?;
    let (base, exact) = base_coloring(k, ell, coloring)?;
    let u = base.num_colors();
    let (lo, hi) = tau_construction_range(k, ell, u);
    if n < lo || n > hi {
        let chi = if exact { "χ(ℓ+k−1, k−1)" } else { "u" };
        return Err(Error::OutOfRange {
            name: "n",
            value: n as u64,
            lo: lo as u64,
            hi: hi as u64,
            constraint: format!("{chi} + ℓ+k−1 ≤ n ≤ C(ℓ+k−1, k−1) + ℓ+k−1 with k = {k}, ℓ = {ell}, u = {u}"),
        });
    }
    if n > MAX_VERTICES {
        return Err(Error::invalid(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    let w = n - lo;
    let classes = refine(base.classes().to_vec(), u + w);
    Ok(TauConstructionPlan {
        k,
        ell,
        n,
        u,
        w,
        a: VertexSet::range(1, m),
        b: VertexSet::range(m + 1, n),
        classes,
        exact_chromatic: exact,
    })
}

/// A `k`-uniform uniquely τ-critical hypergraph on `n` vertices with
/// `τ = ℓ + 1` and no isolated vertices.
pub fn tau_critical_construction(
    k: usize,
    ell: usize,
    n: usize,
    coloring: Option<&Coloring>,
) -> Result<UniformHypergraph> {
    let plan = tau_construction_plan(k, ell, n, coloring)?;
    let h = UniformHypergraph::new(n, k, plan.edges())?;
    let verdict = verify_tau_critical_complement(&h, ell + 1);
    if !verdict.is_ok() {
        return Err(Error::ConstructionDefect(format!(
            "τ-critical construction for (k, ℓ, n) = ({k}, {ell}, {n}) failed: {verdict}"
        )));
    }
    Ok(h)
}

/// The complement of `hc`, once `hc` is confirmed uniquely τ-critical with
/// `τ = n - r + 1` and no isolated vertex.
pub fn to_saturated(hc: &UniformHypergraph, r: usize) -> Result<UniformHypergraph> {
    let n = hc.n();
    require(hc.k() < r && r <= n, format!("k < r ≤ n (got k = {}, r = {r}, n = {n})", hc.k()))?;
    let verdict = verify_tau_critical_complement(hc, n - r + 1);
    if !verdict.is_ok() {
        return Err(Error::Rejected {
            reason: format!("complement is not uniquely τ-critical with τ = {}", n - r + 1),
            verdict,
        });
    }
    let h = complement_hypergraph(hc);
    let verdict = verify_uniquely_saturated(&h, r)?;
    if !verdict.is_ok() {
        return Err(Error::ConstructionDefect(format!(
            "complement passed the τ-critical test but failed saturation: {verdict}"
        )));
    }
    Ok(h)
}

/// The data behind [`near_complete_construction`]: edges
/// `e_i = ([m] ∖ {i}) ∪ outer_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearCompletePlan {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub a: VertexSet,
    pub outer_edges: Vec<VertexSet>,
}

impl NearCompletePlan {
    pub fn edges(&self) -> Vec<VertexSet> {
        self.outer_edges
            .iter()
            .enumerate()
            .map(|(i, &outer)| (self.a - VertexSet::singleton(i + 1)) | outer)
            .collect()
    }
}

/// `⌊(k+2)²/4⌋`.
pub fn near_complete_upper(k: usize) -> usize {
    (k + 2) * (k + 2) / 4
}

pub fn near_complete_plan(k: usize, n: usize) -> Result<NearCompletePlan> {
    require(k >= 3, format!("k ≥ 4, or k = 3 with n = 6 (got k = {k})"))?;
    let (lo, hi) = (k + 2, near_complete_upper(k));
    if n < lo || n > hi {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as u64,
            lo: lo as u64,
            hi: hi as u64,
            constraint: format!("k+2 ≤ n ≤ ⌊(k+2)²/4⌋ with k = {k}"),
        });
    }
    require(k >= 4 || n == 6, format!("k ≥ 4, or k = 3 with n = 6 (got k = {k}, n = {n})"))?;

    if n <= 2 * k {
        let m = k;
        let outer = n - k;
        let outer_edges = (0..m).map(|i| VertexSet::singleton(k + 1 + i % outer)).collect();
        return Ok(NearCompletePlan { k, n, m, a: VertexSet::range(1, m), outer_edges });
    }

    let m = (k + 3) / 2;
    let q = k - m + 1;
    let mut outer_edges = vec![VertexSet::range(m + 1, k + 1), VertexSet::range(k + 2, 2 * k - m + 2)];
    let zone: Vec<usize> = (2 * k - m + 3..=n).collect();
    for j in 0..m - 2 {
        let part = (0..q).map(|i| zone[(j * q + i) % zone.len()]);
        outer_edges.push(VertexSet::from_vertices(part)?);
    }
    Ok(NearCompletePlan { k, n, m, a: VertexSet::range(1, m), outer_edges })
}

/// `H^c` with `τ = 2` whose complement is primitive uniquely
/// `K_{n-1}^(k)`-saturated.
pub fn near_complete_construction(k: usize, n: usize) -> Result<UniformHypergraph> {
    let plan = near_complete_plan(k, n)?;
    let hc = UniformHypergraph::new(n, k, plan.edges())
        .map_err(|e| Error::ConstructionDefect(format!("near-complete plan for (k, n) = ({k}, {n}): {e}")))?;
    let verdict = verify_tau_critical_complement(&hc, 2);
    if !verdict.is_ok() {
        return Err(Error::ConstructionDefect(format!(
            "near-complete construction for (k, n) = ({k}, {n}) failed: {verdict}"
        )));
    }
    Ok(hc)
}
