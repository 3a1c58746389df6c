//! Lexicographic enumeration of perfect matchings.

use num_bigint::BigUint;

use super::count::count_exact_with;
use super::feasibility::{Partial, Residual};
use super::graph::{BipartiteGraph, Matching};
use crate::error::{Error, Result};
use crate::limits::Limits;

struct Frame<'g> {
    res: Residual<'g>,
    opts: Vec<usize>,
    k: usize,
}

/// Depth-first stream over matchings, smallest pi first. Every branch is
/// feasibility-pruned, so each yielded item is a perfect matching.
pub struct Matchings<'g> {
    g: &'g BipartiteGraph,
    stack: Vec<Frame<'g>>,
    pi: Vec<usize>,
    empty_pending: bool,
}

impl Iterator for Matchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Matching::new(Vec::new()));
        }
        let n = self.g.n();
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            let top = self.stack.last_mut()?;
            if top.k >= top.opts.len() {
                self.stack.pop();
                continue;
            }
            let j = top.opts[top.k];
            top.k += 1;
            let mut res = top.res.clone();
            let ok = res.assign(depth, j);
            debug_assert!(ok);
            self.pi[depth] = j;
            if depth + 1 == n {
                return Some(Matching::new(self.pi.clone()));
            }
            let opts = res.options(depth + 1);
            self.stack.push(Frame { res, opts, k: 0 });
        }
    }
}

pub fn enumerate_matchings(g: &BipartiteGraph) -> Result<Matchings<'_>> {
    enumerate_matchings_with(g, &Limits::default())
}

pub fn enumerate_matchings_with<'g>(g: &'g BipartiteGraph, limits: &Limits) -> Result<Matchings<'g>> {
    let count = count_exact_with(g, limits)?;
    if count > BigUint::from(limits.enumeration) {
        return Err(Error::LimitExceeded {
            what: "enumeration",
            value: count.to_string(),
            limit: limits.enumeration,
        });
    }
    Ok(unchecked(g))
}

/// Enumeration without the size check (callers bound the work themselves).
pub(crate) fn unchecked(g: &BipartiteGraph) -> Matchings<'_> {
    let n = g.n();
    let mut stack = Vec::new();
    if n > 0 {
        let res = Residual::new(g, &Partial::empty(n));
        let opts = res.options(0);
        stack.push(Frame { res, opts, k: 0 });
    }
    Matchings { g, stack, pi: vec![0; n], empty_pending: n == 0 }
}
