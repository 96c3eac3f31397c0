//! Exact tools for primitive uniquely `K_r^(k)`-saturated hypergraphs.
//!
//! A `k`-uniform hypergraph `H` on `n` vertices is uniquely `K_r^(k)`-saturated
//! when it contains no complete `k`-uniform hypergraph on `r` vertices, yet
//! adding any missing `k`-set creates exactly one. It is primitive when no
//! vertex lies in every `k`-set through it.
//!
//! The crate works with three equivalent views of such an object:
//!
//! * `H` itself, checked directly by [`verify::verify_uniquely_saturated`];
//! * its complementary hypergraph `R` (complements of the non-edges), checked
//!   by the three-property test [`verify::verify_complementary`];
//! * its `k`-uniform complement `H^c`, which must be uniquely τ-critical with
//!   `τ(H^c) = n - r + 1` ([`transversal`]).
//!
//! On top of these sit explicit [`constructions`], Johnson-graph colorings
//! ([`johnson`]), and an exact existence search over complementary
//! hypergraphs ([`search`]) that regenerates the existence tables.

pub mod combinatorics;
pub mod constructions;
mod error;
pub mod format;
pub mod hypercore;
pub mod johnson;
pub mod search;
pub mod transversal;
pub mod verify;

pub use error::{Error, Result};
pub use hypercore::{ProblemParams, UniformHypergraph, VertexSet, MAX_VERTICES};
pub use verify::{Failure, FailureKind, Verdict, Witness};
