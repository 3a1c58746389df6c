//! Graph model, families, exact counting and matching feasibility.

pub mod band;
mod bregman;
pub mod count;
pub mod enumerate;
pub mod feasibility;
mod graph;
pub mod io;
pub mod options;
mod uniform;

pub use bregman::{bregman_bound, bregman_max_degree_bound};
pub use count::{count_exact, count_exact_with, count_prefix_d2, dist2_counts, family_counts, fib_counts, BigCount};
pub use enumerate::{enumerate_matchings, enumerate_matchings_with, Matchings};
pub use feasibility::{Partial, Residual};
pub use graph::{BipartiteGraph, Family, Matching};
pub use options::{allowable_options, has_completion, has_completion_full};
pub use uniform::UniformSampler;

/// Convenience constructor for built-in families.
pub fn make_family(family: Family, n: usize) -> crate::error::Result<BipartiteGraph> {
    BipartiteGraph::family(family, n)
}
