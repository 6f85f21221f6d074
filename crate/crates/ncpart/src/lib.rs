//! Non-crossing partition lattices `NC(W, c)` for the finite Coxeter groups of
//! types A and B, together with the machinery surrounding them:
//!
//! * [`group`] — (signed) permutation arithmetic, reflections, roots,
//!   reflection length and the absolute order;
//! * [`lattice`] — the graded lattice `NC(W, c)`, maximal chains, Boolean
//!   sublattices from reduced words, left modularity and supersolvability;
//! * [`hurwitz`] — shift moves on reduced words, the Hurwitz graph on maximal
//!   chains and its exact BFS metrics;
//! * [`gf`] / [`building`] — exact linear algebra over small prime fields, the
//!   subspace lattice of `F_p^d` as a spherical building, and the explicit
//!   embeddings of the non-crossing partition complexes over `F_2` and `F_3`;
//! * [`pictorial`] — polygon diagrams: non-crossing partitions, labeled
//!   non-crossing spanning trees, slide moves, universal chambers and
//!   `B_n`-graphs;
//! * [`report`] — the machine-checkable claim suite used by `nc verify`.
//!
//! Everything is exact integer combinatorics at desk scale; nothing here uses
//! floating point. All values are immutable after construction and all
//! operations are pure, so concurrent use is unrestricted. With the default
//! `parallel` feature the embarrassingly parallel scans (all-pairs BFS, left
//! modularity, pairwise embedding checks) run on rayon; disabling the feature
//! swaps in sequential loops with identical results.

pub mod building;
pub mod gf;
pub mod graph;
pub mod group;
pub mod hurwitz;
pub mod lattice;
mod par;
pub mod pictorial;
pub mod report;

use serde::Serialize;

/// Crate-wide error type. The three variants mirror the CLI exit codes:
/// usage errors exit 1, exhausted budgets exit 2, and integrity failures
/// (a verification that did not hold) exit 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("integrity error: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration caps. The defaults keep every operation at desk scale; the CLI
/// exposes `--budget` / `NC_BUDGET` to raise or lower the generic counters.
#[derive(Debug, Clone, Serialize)]
pub struct Budget {
    /// Cap on the number of reduced words a single enumeration may produce.
    pub max_words: u64,
    /// Cap on the number of maximal chains (vertices of a Hurwitz graph).
    pub max_chains: u64,
    /// Cap on the field size `p^d` for subspace enumerations.
    pub max_field_size: u64,
    /// Largest admissible degree for type A (symmetric group `S_m`).
    pub max_degree_a: u8,
    /// Largest admissible degree for type B (signed permutations of `n` letters).
    pub max_degree_b: u8,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_words: 1_000_000,
            max_chains: 100_000,
            max_field_size: 243, // 3^5
            max_degree_a: 7,
            max_degree_b: 5,
        }
    }
}

impl Budget {
    /// Default caps with the generic enumeration counters overridden.
    pub fn with_limit(limit: u64) -> Self {
        Budget {
            max_words: limit,
            max_chains: limit,
            ..Budget::default()
        }
    }
}
