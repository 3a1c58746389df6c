//! Transfer DP over banded graphs, processing left vertices 0..n in order.
//!
//! Before left i is processed the state is a bitmask over the window of
//! right vertices i-lo ..= i+hi: bit b set means right i-lo+b is used (or
//! out of range). After left i picks j, right i-lo must be used because no
//! later left can reach it; the window then slides by one.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::feasibility::Partial;
use super::graph::BipartiteGraph;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Cap on live states per layer, independent of the window width.
const MAX_LAYER_STATES: usize = 1 << 20;

#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub n: usize,
    pub lo: usize,
    pub hi: usize,
    pub w: usize,
}

impl Window {
    pub fn of(g: &BipartiteGraph, limits: &Limits) -> Result<Self> {
        let (lo, hi) = g.band();
        let w = lo + hi + 1;
        if w > limits.bandwidth || w > 31 {
            return Err(Error::UnsupportedWidth { width: w, limit: limits.bandwidth });
        }
        Ok(Window { n: g.n(), lo, hi, w })
    }

    /// Right vertex represented by bit b at step i (may be out of range).
    #[inline]
    pub fn right_of(&self, i: usize, b: usize) -> isize {
        i as isize - self.lo as isize + b as isize
    }

    pub fn initial(&self) -> u32 {
        let mut m = 0u32;
        for b in 0..self.w {
            let r = self.right_of(0, b);
            if r < 0 || r >= self.n as isize {
                m |= 1 << b;
            }
        }
        m
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.w) - 1) as u32
    }

    /// State after left i takes right j from state `mask`.
    #[inline]
    pub fn step(&self, i: usize, mask: u32, j: usize) -> Option<u32> {
        let b = (j + self.lo).checked_sub(i)?;
        if b >= self.w || mask & (1 << b) != 0 {
            return None;
        }
        let m = mask | (1 << b);
        if m & 1 == 0 {
            return None;
        }
        let mut next = m >> 1;
        if i + 1 + self.hi >= self.n {
            next |= 1 << (self.w - 1);
        }
        Some(next)
    }

    /// Window mask at step i read off a used-rights vector; None if a right
    /// below the window is still free (the prefix can then never complete).
    pub fn mask_from_used(&self, i: usize, used: &[bool]) -> Option<u32> {
        let below = i.saturating_sub(self.lo);
        if used[..below.min(self.n)].iter().any(|u| !u) {
            return None;
        }
        let mut m = 0u32;
        for b in 0..self.w {
            let r = self.right_of(i, b);
            if r < 0 || r >= self.n as isize || used[r as usize] {
                m |= 1 << b;
            }
        }
        Some(m)
    }
}

/// Live (reachable and co-reachable) states per layer, with relative
/// completion weights used by the uniform sampler.
#[derive(Debug, Clone)]
pub struct BandDp {
    pub win: Window,
    /// layers[i]: sorted live states before left i is processed (i = 0..=n).
    layers: Vec<Vec<u32>>,
    /// weights[i][k]: completions from layers[i][k], scaled per layer.
    weights: Vec<Vec<f64>>,
}

impl BandDp {
    pub fn new(g: &BipartiteGraph, limits: &Limits) -> Result<Self> {
        let win = Window::of(g, limits)?;
        let n = g.n();
        let mut fwd: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
        fwd.push(vec![win.initial()]);
        for i in 0..n {
            let mut next: Vec<u32> = Vec::new();
            for &s in &fwd[i] {
                for &j in g.neighbors(i) {
                    if let Some(t) = win.step(i, s, j) {
                        next.push(t);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            if next.len() > MAX_LAYER_STATES {
                return Err(Error::LimitExceeded {
                    what: "band DP states",
                    value: next.len().to_string(),
                    limit: MAX_LAYER_STATES as u64,
                });
            }
            fwd.push(next);
        }
        let mut layers = vec![Vec::new(); n + 1];
        let mut weights = vec![Vec::new(); n + 1];
        if fwd[n].binary_search(&win.full()).is_ok() {
            layers[n] = vec![win.full()];
            weights[n] = vec![1.0];
        }
        for i in (0..n).rev() {
            let mut ls = Vec::new();
            let mut ws = Vec::new();
            for &s in &fwd[i] {
                let mut tot = 0.0;
                for &j in g.neighbors(i) {
                    if let Some(t) = win.step(i, s, j) {
                        if let Ok(k) = layers[i + 1].binary_search(&t) {
                            tot += weights[i + 1][k];
                        }
                    }
                }
                if tot > 0.0 {
                    ls.push(s);
                    ws.push(tot);
                }
            }
            let mx = ws.iter().cloned().fold(0.0f64, f64::max);
            if mx > 0.0 {
                ws.iter_mut().for_each(|w| *w /= mx);
            }
            layers[i] = ls;
            weights[i] = ws;
        }
        Ok(BandDp { win, layers, weights })
    }

    pub fn is_live(&self, i: usize, mask: u32) -> bool {
        self.layers[i].binary_search(&mask).is_ok()
    }

    pub fn weight(&self, i: usize, mask: u32) -> f64 {
        match self.layers[i].binary_search(&mask) {
            Ok(k) => self.weights[i][k],
            Err(_) => 0.0,
        }
    }

    pub fn feasible(&self) -> bool {
        !self.layers[0].is_empty()
    }

    /// Options of left i given state mask, keeping a completion possible.
    pub fn options(&self, g: &BipartiteGraph, i: usize, mask: u32) -> Vec<usize> {
        g.neighbors(i)
            .iter()
            .copied()
            .filter(|&j| self.win.step(i, mask, j).is_some_and(|t| self.is_live(i + 1, t)))
            .collect()
    }
}

/// Exact number of perfect matchings of g restricted to `allowed` edges.
pub fn count_restricted(
    g: &BipartiteGraph,
    limits: &Limits,
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<BigUint> {
    let win = Window::of(g, limits)?;
    let n = g.n();
    let mut cur: HashMap<u32, BigUint> = HashMap::from([(win.initial(), BigUint::one())]);
    for i in 0..n {
        let mut next: HashMap<u32, BigUint> = HashMap::with_capacity(cur.len() * 2);
        for (&s, c) in &cur {
            for &j in g.neighbors(i) {
                if !allowed(i, j) {
                    continue;
                }
                if let Some(t) = win.step(i, s, j) {
                    *next.entry(t).or_insert_with(BigUint::zero) += c;
                }
            }
        }
        if next.len() > MAX_LAYER_STATES {
            return Err(Error::LimitExceeded {
                what: "band DP states",
                value: next.len().to_string(),
                limit: MAX_LAYER_STATES as u64,
            });
        }
        cur = next;
    }
    Ok(cur.remove(&win.full()).unwrap_or_else(BigUint::zero))
}

/// Number of completions of a partial assignment (0 if it is infeasible).
pub fn count_completions(g: &BipartiteGraph, limits: &Limits, partial: &Partial) -> Result<BigUint> {
    let reserved = partial.used_rights(g.n());
    count_restricted(g, limits, |i, j| match partial.assign[i] {
        Some(a) => a == j,
        None => !reserved[j],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::graph::Family;

    #[test]
    fn band_counts_small_families() {
        let lim = Limits::default();
        let g = BipartiteGraph::family(Family::Fibonacci(1), 10).unwrap();
        assert_eq!(count_restricted(&g, &lim, |_, _| true).unwrap(), BigUint::from(89u32));
        let g = BipartiteGraph::family(Family::Distance(2), 5).unwrap();
        assert_eq!(count_restricted(&g, &lim, |_, _| true).unwrap(), BigUint::from(31u32));
    }

    #[test]
    fn live_layers_and_options() {
        let lim = Limits::default();
        let g = BipartiteGraph::family(Family::Fibonacci(1), 4).unwrap();
        let dp = BandDp::new(&g, &lim).unwrap();
        assert!(dp.feasible());
        let m0 = dp.win.initial();
        assert_eq!(dp.options(&g, 0, m0), vec![0, 1]);
        // after 1 -> 2, left 2 is forced to 1
        let m1 = dp.win.step(0, m0, 1).unwrap();
        assert_eq!(dp.options(&g, 1, m1), vec![0]);
    }
}
