//! Block engines on Fibonacci graphs. Every pi in F_{n,t} splits into
//! contiguous blocks [a, b] (b - a <= t) with pi(a) = b and pi(k) = k - 1
//! for a < k <= b, so each choice commits a whole block.

use std::sync::OnceLock;

use super::driver::{take, Driver};
use super::trace::{Move, Recorder};
use crate::bipartite::{enumerate_matchings, BipartiteGraph, Family};
use crate::error::Result;

pub(crate) const NONE: usize = usize::MAX;

/// Partially determined Fibonacci permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibState {
    pub pi: Vec<usize>,
}

impl FibState {
    pub fn new(n: usize) -> Self {
        FibState { pi: vec![NONE; n] }
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    #[inline]
    pub fn free(&self, k: usize) -> bool {
        k < self.pi.len() && self.pi[k] == NONE
    }

    /// Commits the block [a, b].
    pub fn apply_block(&mut self, a: usize, b: usize) {
        self.pi[a] = b;
        for k in a + 1..=b {
            self.pi[k] = k - 1;
        }
    }

    fn apply(&mut self, m: &Move) {
        for (i, j) in m.pairs() {
            self.pi[i] = j;
        }
    }

    /// Smallest undetermined index.
    pub fn first_free(&self) -> Option<usize> {
        self.pi.iter().position(|&v| v == NONE)
    }
}

/// Next index matched by the greedy order on F_{n,1}: the second smallest
/// undetermined index, or the smallest when it is the last index.
pub fn greedy_next_index(state: &FibState) -> Option<usize> {
    let m = state.first_free()?;
    Some(if m + 1 < state.n() { m + 1 } else { m })
}

/// Blocks [a, b] with a <= i <= b, b - a <= t, all of whose indices are
/// undetermined; ordered by a, then b.
pub fn cycle_options(state: &FibState, t: usize, i: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in i.saturating_sub(t)..=i {
        if (a..=i).any(|k| !state.free(k)) {
            continue;
        }
        for b in i..=a + t {
            if !state.free(b) {
                break;
            }
            out.push((a, b));
        }
    }
    out
}

/// The six cycle configurations on F_{n,2}, filtered by boundaries and
/// prior assignments.
pub fn cycle_options_fib2(state: &FibState, i: usize) -> Vec<(usize, usize)> {
    cycle_options(state, 2, i)
}

#[derive(Debug, Clone)]
pub(crate) enum FibOrder {
    Fixed,
    Random,
    Greedy,
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone)]
pub(crate) struct FibEngine {
    pub n: usize,
    pub t: usize,
    pub order: FibOrder,
    /// Tuned table applied to full menus (2 entries fixed, 3 greedy).
    pub tuned: Option<Vec<f64>>,
}

impl FibEngine {
    fn menu(&self, st: &FibState, i: usize, menu: &mut Vec<Move>) {
        menu.clear();
        for (a, b) in cycle_options(st, self.t, i) {
            menu.push(Move::block(a, b));
        }
    }

    fn probs<'a>(&'a self, menu: &[Move]) -> Option<&'a [f64]> {
        let p = self.tuned.as_deref()?;
        (menu.len() == p.len()).then_some(p)
    }

    pub fn run<D: Driver>(&self, d: &mut D, rec: &mut Recorder) -> Result<Vec<usize>> {
        let n = self.n;
        let mut st = FibState::new(n);
        let mut menu = Vec::with_capacity(2 * self.t + 2);
        match &self.order {
            FibOrder::Fixed => {
                for i in 0..n {
                    if st.free(i) {
                        self.menu(&st, i, &mut menu);
                        let m = take(d, rec, i, &menu, self.probs(&menu))?;
                        st.apply(&m);
                    }
                }
            }
            FibOrder::Explicit(seq) => {
                for &i in seq {
                    if st.free(i) {
                        self.menu(&st, i, &mut menu);
                        let m = take(d, rec, i, &menu, None)?;
                        st.apply(&m);
                    }
                }
            }
            FibOrder::Greedy => {
                let mut lo = 0;
                while lo < n {
                    if !st.free(lo) {
                        lo += 1;
                        continue;
                    }
                    let i = if lo + 1 < n { lo + 1 } else { lo };
                    self.menu(&st, i, &mut menu);
                    let m = take(d, rec, i, &menu, self.probs(&menu))?;
                    st.apply(&m);
                    // the index below the pivot is a singleton unless taken
                    if st.free(lo) && i == lo + 1 {
                        menu.clear();
                        menu.push(Move::block(lo, lo));
                        let m = take(d, rec, lo, &menu, None)?;
                        st.apply(&m);
                    }
                }
            }
            FibOrder::Random => {
                let mut und: Vec<usize> = (0..n).collect();
                let mut pos: Vec<usize> = (0..n).collect();
                while !und.is_empty() {
                    let i = und[d.pick_index(und.len())];
                    self.menu(&st, i, &mut menu);
                    let m = take(d, rec, i, &menu, None)?;
                    st.apply(&m);
                    for (k, _) in m.pairs() {
                        let p = pos[k];
                        let last = *und.last().expect("nonempty");
                        und.swap_remove(p);
                        if p < und.len() {
                            pos[last] = p;
                        }
                    }
                }
            }
        }
        Ok(st.pi)
    }
}

/// The 9 block structures of the greedy F_{n,2} order, read off F_{7,2} as
/// the minimal closed prefixes that contain index 2.
pub fn greedy_fib2_menu() -> &'static [Move] {
    static MENU: OnceLock<Vec<Move>> = OnceLock::new();
    MENU.get_or_init(|| {
        let g = BipartiteGraph::family(Family::Fibonacci(2), 7).expect("valid family");
        let mut out: Vec<Move> = Vec::new();
        for m in enumerate_matchings(&g).expect("small graph") {
            let mut hi = 0;
            let mut span = 0;
            for (k, &v) in m.pi.iter().enumerate() {
                hi = hi.max(v);
                if k >= 2 && hi == k {
                    span = k + 1;
                    break;
                }
            }
            let pairs: Vec<(usize, usize)> = (0..span).map(|k| (k, m.pi[k])).collect();
            let mv = Move::from_pairs(&pairs);
            if !out.contains(&mv) {
                out.push(mv);
            }
        }
        out.sort_by_key(|m| (m.len(), m.to_string()));
        out
    })
}

/// All F_{r,2} matchings of [s, s + r) as moves (compositions into blocks).
fn tail_menu(s: usize, r: usize, out: &mut Vec<Move>) {
    fn rec(a: usize, end: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Move>) {
        if a == end {
            out.push(Move::from_pairs(cur));
            return;
        }
        for b in a..end.min(a + 3) {
            let before = cur.len();
            cur.push((a, b));
            for k in a + 1..=b {
                cur.push((k, k - 1));
            }
            rec(b + 1, end, cur, out);
            cur.truncate(before);
        }
    }
    out.clear();
    rec(s, s + r, &mut Vec::new(), out);
}

/// Greedy cycle order on F_{n,2}: uniform over the 9-structure menu at the
/// pivot s + 2 while at least 5 indices remain, then a uniform tail.
#[derive(Debug, Clone)]
pub(crate) struct GreedyFib2Engine {
    pub n: usize,
}

impl GreedyFib2Engine {
    pub fn run<D: Driver>(&self, d: &mut D, rec: &mut Recorder) -> Result<Vec<usize>> {
        let n = self.n;
        let mut pi = vec![NONE; n];
        let base = greedy_fib2_menu();
        let mut menu: Vec<Move> = Vec::with_capacity(9);
        let mut s = 0;
        while n - s >= 5 {
            menu.clear();
            menu.extend(base.iter().map(|m| m.shifted(s)));
            let m = take(d, rec, s + 2, &menu, None)?;
            for (i, j) in m.pairs() {
                pi[i] = j;
            }
            s += m.len();
        }
        if s < n {
            tail_menu(s, n - s, &mut menu);
            let pivot = if n - s >= 3 { s + 2 } else { s };
            let m = take(d, rec, pivot, &menu, None)?;
            for (i, j) in m.pairs() {
                pi[i] = j;
            }
        }
        Ok(pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_index_examples() {
        let mut st = FibState::new(8);
        assert_eq!(greedy_next_index(&st), Some(1));
        st.apply_block(1, 2);
        st.apply_block(0, 0);
        assert_eq!(greedy_next_index(&st), Some(4));
        let mut st = FibState::new(6);
        st.apply_block(0, 1);
        assert_eq!(greedy_next_index(&st), Some(3));
        let mut st = FibState::new(3);
        st.apply_block(0, 1);
        assert_eq!(greedy_next_index(&st), Some(2));
    }

    #[test]
    fn six_configurations() {
        let st = FibState::new(8);
        assert_eq!(cycle_options_fib2(&st, 3).len(), 6);
        assert_eq!(cycle_options_fib2(&st, 0), vec![(0, 0), (0, 1), (0, 2)]);
        let mut st = FibState::new(8);
        st.apply_block(4, 4);
        assert_eq!(cycle_options_fib2(&st, 3), vec![(1, 3), (2, 3), (3, 3)]);
    }

    #[test]
    fn greedy_menu_shape() {
        let menu = greedy_fib2_menu();
        assert_eq!(menu.len(), 9);
        let spans: Vec<usize> = menu.iter().map(Move::len).collect();
        for (span, want) in [(3, 4), (4, 3), (5, 2)] {
            assert_eq!(spans.iter().filter(|&&s| s == span).count(), want);
        }
    }

    #[test]
    fn tail_counts() {
        let mut v = Vec::new();
        for (r, c) in [(1, 1), (2, 2), (3, 4), (4, 7)] {
            tail_menu(0, r, &mut v);
            assert_eq!(v.len(), c);
        }
    }
}
