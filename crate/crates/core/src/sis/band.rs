//! Fixed top-down order on banded graphs driven by the live-state DP, and
//! the two-case block rule on D_{n,2}.

use super::driver::{take, Driver};
use super::fib::NONE;
use super::trace::{Move, Recorder};
use crate::bipartite::band::BandDp;
use crate::bipartite::BipartiteGraph;
use crate::error::Result;

/// Uniform choices over feasible options, left 0 to n-1, from window state `mask`.
fn uniform_tail<D: Driver>(
    g: &BipartiteGraph,
    dp: &BandDp,
    from: usize,
    mut mask: u32,
    pi: &mut [usize],
    d: &mut D,
    rec: &mut Recorder,
) -> Result<()> {
    let mut menu = Vec::with_capacity(dp.win.w);
    for i in from..g.n() {
        menu.clear();
        menu.extend(dp.options(g, i, mask).into_iter().map(|j| Move::single(i, j)));
        let m = take(d, rec, i, &menu, None)?;
        let (_, j) = m.pairs().next().expect("single");
        pi[i] = j;
        mask = dp.win.step(i, mask, j).expect("live option");
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub(crate) struct BandFixedEngine {
    pub dp: BandDp,
}

impl BandFixedEngine {
    pub fn run<D: Driver>(&self, g: &BipartiteGraph, d: &mut D, rec: &mut Recorder) -> Result<Vec<usize>> {
        let mut pi = vec![NONE; g.n()];
        uniform_tail(g, &self.dp, 0, self.dp.win.initial(), &mut pi, d, rec)?;
        Ok(pi)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Dist2StarEngine {
    pub dp: BandDp,
    pub case1: [f64; 5],
    pub case2: [f64; 3],
}

impl Dist2StarEngine {
    /// Case 1: rights below k used (closed prefix). Case 2: right k-1 free,
    /// right k used. Tuned while case 1 has >= 4 lefts left or case 2 has >= 3.
    pub fn run<D: Driver>(&self, g: &BipartiteGraph, d: &mut D, rec: &mut Recorder) -> Result<Vec<usize>> {
        let n = g.n();
        let mut pi = vec![NONE; n];
        let mut used = vec![false; n];
        let mut k = 0;
        let mut open = false;
        let mut menu: Vec<Move> = Vec::with_capacity(5);
        loop {
            let r = n - k;
            if !open && r >= 4 {
                menu.clear();
                menu.push(Move::single(k, k));
                menu.push(Move::single(k, k + 1));
                menu.push(Move::from_pairs(&[(k, k + 2), (k + 1, k)]));
                menu.push(Move::from_pairs(&[(k, k + 2), (k + 1, k + 1), (k + 2, k)]));
                menu.push(Move::from_pairs(&[(k, k + 2), (k + 1, k + 3), (k + 2, k), (k + 3, k + 1)]));
                let m = take(d, rec, k, &menu, Some(&self.case1))?;
                let idx = menu.iter().position(|x| *x == m).expect("in menu");
                for (i, j) in m.pairs() {
                    pi[i] = j;
                    used[j] = true;
                }
                k += m.len();
                open = idx == 1 || idx == 2;
            } else if open && r >= 3 {
                menu.clear();
                menu.push(Move::single(k, k - 1));
                menu.push(Move::from_pairs(&[(k, k + 1), (k + 1, k - 1)]));
                menu.push(Move::from_pairs(&[(k, k + 2), (k + 1, k - 1)]));
                let m = take(d, rec, k, &menu, Some(&self.case2))?;
                let idx = menu.iter().position(|x| *x == m).expect("in menu");
                for (i, j) in m.pairs() {
                    pi[i] = j;
                    used[j] = true;
                }
                k += m.len();
                open = idx == 2;
            } else {
                break;
            }
        }
        if k < n {
            let mask = self.dp.win.mask_from_used(k, &used).expect("prefix is completable");
            uniform_tail(g, &self.dp, k, mask, &mut pi, d, rec)?;
        }
        Ok(pi)
    }
}
