//! Perfect-matching feasibility of partial assignments.
//!
//! `Residual` keeps a perfect matching of the residual graph (unassigned
//! lefts vs unused rights) and updates it incrementally along alternating
//! cycles; `full_*` functions recompute from scratch with Hopcroft-Karp.

use std::collections::VecDeque;

use super::graph::BipartiteGraph;
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Partial assignment of left vertices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partial {
    pub assign: Vec<Option<usize>>,
}

impl Partial {
    pub fn empty(n: usize) -> Self {
        Partial { assign: vec![None; n] }
    }

    /// From 1-based (left, right) pairs.
    pub fn from_pairs_one_based(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut p = Self::empty(n);
        for &(i, j) in pairs {
            p.assign[i - 1] = Some(j - 1);
        }
        p
    }

    pub fn used_rights(&self, n: usize) -> Vec<bool> {
        let mut used = vec![false; n];
        for j in self.assign.iter().flatten() {
            used[*j] = true;
        }
        used
    }

    /// Checks the partial is injective and uses only edges.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<()> {
        if self.assign.len() != g.n() {
            return Err(Error::InvalidParameter("partial length differs from n".into()));
        }
        let mut seen = vec![false; g.n()];
        for (i, a) in self.assign.iter().enumerate() {
            if let Some(j) = *a {
                if j >= g.n() || seen[j] || !g.has_edge(i, j) {
                    return Err(Error::InvalidParameter(format!(
                        "partial assignment {} -> {} is not an injective edge",
                        i + 1,
                        j + 1
                    )));
                }
                seen[j] = true;
            }
        }
        Ok(())
    }
}

/// Maximum matching size on the sub-graph induced by active lefts/rights
/// (Hopcroft-Karp). Returns (size, mate_l, mate_r).
fn hopcroft_karp(
    g: &BipartiteGraph,
    left_active: &[bool],
    right_active: &[bool],
) -> (usize, Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut mate_l = vec![NONE; n];
    let mut mate_r = vec![NONE; n];
    let mut dist = vec![0usize; n];
    let mut size = 0;
    // greedy start
    for i in 0..n {
        if !left_active[i] {
            continue;
        }
        if let Some(&j) = g.neighbors(i).iter().find(|&&j| right_active[j] && mate_r[j] == NONE) {
            mate_l[i] = j;
            mate_r[j] = i;
            size += 1;
        }
    }
    loop {
        // BFS layering from free lefts
        let mut q = VecDeque::new();
        let mut found = false;
        for i in 0..n {
            if left_active[i] && mate_l[i] == NONE {
                dist[i] = 0;
                q.push_back(i);
            } else {
                dist[i] = NONE;
            }
        }
        while let Some(x) = q.pop_front() {
            for &y in g.neighbors(x) {
                if !right_active[y] {
                    continue;
                }
                let w = mate_r[y];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[x] + 1;
                    q.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for i in 0..n {
            if left_active[i] && mate_l[i] == NONE && augment(g, right_active, i, &mut dist, &mut mate_l, &mut mate_r) {
                size += 1;
            }
        }
    }
    (size, mate_l, mate_r)
}

fn augment(
    g: &BipartiteGraph,
    right_active: &[bool],
    x: usize,
    dist: &mut [usize],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
) -> bool {
    // iterative DFS along the BFS layers
    let mut stack: Vec<(usize, usize)> = vec![(x, 0)];
    let mut path: Vec<(usize, usize)> = Vec::new();
    while let Some(&mut (u, ref mut k)) = stack.last_mut() {
        let nb = g.neighbors(u);
        if *k >= nb.len() {
            dist[u] = NONE;
            stack.pop();
            path.pop();
            continue;
        }
        let y = nb[*k];
        *k += 1;
        if !right_active[y] {
            continue;
        }
        let w = mate_r[y];
        if w == NONE {
            path.push((u, y));
            for &(a, b) in &path {
                mate_l[a] = b;
                mate_r[b] = a;
            }
            return true;
        }
        if dist[w] != NONE && dist[w] == dist[u] + 1 {
            path.push((u, y));
            stack.push((w, 0));
        }
    }
    false
}

pub fn has_perfect_matching(g: &BipartiteGraph) -> bool {
    let all = vec![true; g.n()];
    hopcroft_karp(g, &all, &all).0 == g.n()
}

/// Full recomputation: does the residual graph of `partial` have a perfect matching?
pub fn full_has_completion(g: &BipartiteGraph, partial: &Partial) -> bool {
    let left: Vec<bool> = partial.assign.iter().map(Option::is_none).collect();
    let used = partial.used_rights(g.n());
    let right: Vec<bool> = used.iter().map(|u| !u).collect();
    let need = left.iter().filter(|&&b| b).count();
    hopcroft_karp(g, &left, &right).0 == need
}

/// Full recomputation of the allowable options of an unassigned left i.
pub fn full_options(g: &BipartiteGraph, partial: &Partial, i: usize) -> Vec<usize> {
    let used = partial.used_rights(g.n());
    let mut out = Vec::new();
    let mut p = partial.clone();
    for &j in g.neighbors(i) {
        if used[j] {
            continue;
        }
        p.assign[i] = Some(j);
        if full_has_completion(g, &p) {
            out.push(j);
        }
    }
    out
}

/// Incrementally maintained residual graph with a perfect matching.
#[derive(Debug, Clone)]
pub struct Residual<'g> {
    g: &'g BipartiteGraph,
    assigned: Vec<bool>,
    used: Vec<bool>,
    mate_l: Vec<usize>,
    mate_r: Vec<usize>,
    ok: bool,
}

impl<'g> Residual<'g> {
    pub fn new(g: &'g BipartiteGraph, partial: &Partial) -> Self {
        let assigned: Vec<bool> = partial.assign.iter().map(Option::is_some).collect();
        let used = partial.used_rights(g.n());
        let left: Vec<bool> = assigned.iter().map(|a| !a).collect();
        let right: Vec<bool> = used.iter().map(|u| !u).collect();
        let need = left.iter().filter(|&&b| b).count();
        let (size, mate_l, mate_r) = hopcroft_karp(g, &left, &right);
        Residual { g, assigned, used, mate_l, mate_r, ok: size == need }
    }

    pub fn feasible(&self) -> bool {
        self.ok
    }

    pub fn is_assigned(&self, i: usize) -> bool {
        self.assigned[i]
    }

    pub fn is_used(&self, j: usize) -> bool {
        self.used[j]
    }

    /// Alternating path search for putting (i, j) into the residual matching.
    /// Returns the new assignments along the cycle, or None.
    fn cycle_through(&self, i: usize, j: usize) -> Option<Vec<(usize, usize)>> {
        let r0 = self.mate_l[i];
        if r0 == j {
            return Some(vec![(i, j)]);
        }
        let u = self.mate_r[j];
        let n = self.g.n();
        let mut parent: Vec<(usize, usize)> = vec![(NONE, NONE); n];
        let mut seen = vec![false; n];
        seen[u] = true;
        seen[i] = true;
        let mut q = VecDeque::from([u]);
        while let Some(x) = q.pop_front() {
            for &y in self.g.neighbors(x) {
                if self.used[y] || y == self.mate_l[x] || y == j {
                    continue;
                }
                if y == r0 {
                    let mut moves = vec![(i, j), (x, r0)];
                    let mut cur = x;
                    while cur != u {
                        let (p, yy) = parent[cur];
                        moves.push((p, yy));
                        cur = p;
                    }
                    return Some(moves);
                }
                let w = self.mate_r[y];
                if w != NONE && !seen[w] {
                    seen[w] = true;
                    parent[w] = (x, y);
                    q.push_back(w);
                }
            }
        }
        None
    }

    /// Allowable options of unassigned left i, sorted ascending.
    pub fn options(&self, i: usize) -> Vec<usize> {
        if !self.ok || self.assigned[i] {
            return Vec::new();
        }
        self.g
            .neighbors(i)
            .iter()
            .copied()
            .filter(|&j| !self.used[j] && self.cycle_through(i, j).is_some())
            .collect()
    }

    pub fn allows(&self, i: usize, j: usize) -> bool {
        self.ok && !self.assigned[i] && !self.used[j] && self.g.has_edge(i, j) && self.cycle_through(i, j).is_some()
    }

    /// Commits i -> j; returns false (state unchanged) if that breaks feasibility.
    pub fn assign(&mut self, i: usize, j: usize) -> bool {
        if !self.allows(i, j) {
            return false;
        }
        let moves = self.cycle_through(i, j).expect("checked");
        for (a, b) in moves {
            self.mate_l[a] = b;
            self.mate_r[b] = a;
        }
        self.assigned[i] = true;
        self.used[j] = true;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::graph::Family;

    #[test]
    fn residual_matches_full_recomputation() {
        let g = BipartiteGraph::family(Family::Distance(2), 7).unwrap();
        let mut p = Partial::empty(7);
        let mut r = Residual::new(&g, &p);
        for (i, j) in [(3, 1), (0, 2), (6, 5)] {
            for k in 0..7 {
                if p.assign[k].is_none() {
                    assert_eq!(r.options(k), full_options(&g, &p, k), "left {k}");
                }
            }
            assert!(r.assign(i, j));
            p.assign[i] = Some(j);
        }
        assert!(!r.assign(1, 0) || full_has_completion(&g, &{
            let mut q = p.clone();
            q.assign[1] = Some(0);
            q
        }));
    }

    #[test]
    fn infeasible_partial() {
        let g = BipartiteGraph::family(Family::Fibonacci(1), 4).unwrap();
        let p = Partial::from_pairs_one_based(4, &[(1, 2), (2, 3)]);
        assert!(!Residual::new(&g, &p).feasible());
        assert!(!full_has_completion(&g, &p));
    }
}
