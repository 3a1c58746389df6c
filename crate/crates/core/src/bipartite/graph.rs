use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graph family tag. Indices are 1-based in the family definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Left i adjacent to right j iff -1 <= j - i <= t.
    Fibonacci(usize),
    /// Left i adjacent to right j iff |j - i| <= d.
    Distance(usize),
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Fibonacci(t) => write!(f, "fib{t}"),
            Family::Distance(d) => write!(f, "dist{d}"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// Square bipartite graph stored as sorted neighbor lists of the left side.
/// Vertices are 0-based internally; text I/O and display are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    family: Family,
    lo: usize,
    hi: usize,
}

impl BipartiteGraph {
    /// Built-in family graph. n = 0 gives the empty graph with one (empty) matching.
    pub fn family(family: Family, n: usize) -> Result<Self> {
        let neighbors = match family {
            Family::Fibonacci(t) => {
                if t == 0 {
                    return Err(Error::InvalidParameter("t must be at least 1".into()));
                }
                (0..n)
                    .map(|i| (i.saturating_sub(1)..=(i + t).min(n.saturating_sub(1))).collect())
                    .collect()
            }
            Family::Distance(d) => {
                if d == 0 {
                    return Err(Error::InvalidParameter("d must be at least 1".into()));
                }
                (0..n)
                    .map(|i| (i.saturating_sub(d)..=(i + d).min(n.saturating_sub(1))).collect())
                    .collect()
            }
            Family::Custom => {
                return Err(Error::InvalidParameter(
                    "custom graphs are built from neighbor lists".into(),
                ))
            }
        };
        Ok(Self::build(n, neighbors, family))
    }

    /// Custom graph from 0-based neighbor lists; rejects graphs without a perfect matching.
    pub fn from_neighbors(neighbors: Vec<Vec<usize>>) -> Result<Self> {
        let n = neighbors.len();
        let mut cleaned = Vec::with_capacity(n);
        for (i, list) in neighbors.into_iter().enumerate() {
            let mut list = list;
            list.sort_unstable();
            list.dedup();
            if let Some(&j) = list.iter().find(|&&j| j >= n) {
                return Err(Error::InvalidParameter(format!(
                    "neighbor {} of left vertex {} outside [1, {}]",
                    j + 1,
                    i + 1,
                    n
                )));
            }
            cleaned.push(list);
        }
        let g = Self::build(n, cleaned, Family::Custom);
        if !super::feasibility::has_perfect_matching(&g) {
            return Err(Error::NoPerfectMatching);
        }
        Ok(g)
    }

    fn build(n: usize, neighbors: Vec<Vec<usize>>, family: Family) -> Self {
        let mut lo = 0;
        let mut hi = 0;
        for (i, list) in neighbors.iter().enumerate() {
            if let (Some(&a), Some(&b)) = (list.first(), list.last()) {
                lo = lo.max(i.saturating_sub(a));
                hi = hi.max(b.saturating_sub(i));
            }
        }
        BipartiteGraph { n, neighbors, family, lo, hi }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn family_tag(&self) -> Family {
        self.family
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.neighbors[i].binary_search(&j).is_ok()
    }

    /// (lo, hi): every edge (i, j) has i - lo <= j <= i + hi.
    pub fn band(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    /// Width of the sliding window of right vertices a left vertex can see.
    pub fn window(&self) -> usize {
        self.lo + self.hi + 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum()
    }
}

/// A perfect matching as a permutation: `pi[i]` is the right partner of left i (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    pub pi: Vec<usize>,
}

impl Matching {
    pub fn new(pi: Vec<usize>) -> Self {
        Matching { pi }
    }

    /// From 1-based values, e.g. `[2, 1, 3, 4]` for 2134.
    pub fn from_one_based(pi: &[usize]) -> Self {
        Matching { pi: pi.iter().map(|&v| v - 1).collect() }
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.pi.iter().map(|&v| v + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// Checks bijectivity and that every pair is an edge.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<()> {
        if self.pi.len() != g.n() {
            return Err(Error::NotAMatching(format!(
                "length {} for graph with n = {}",
                self.pi.len(),
                g.n()
            )));
        }
        let mut seen = vec![false; g.n()];
        for (i, &j) in self.pi.iter().enumerate() {
            if j >= g.n() || seen[j] {
                return Err(Error::NotAMatching(format!("value {} repeated or out of range", j + 1)));
            }
            seen[j] = true;
            if !g.has_edge(i, j) {
                return Err(Error::NotAMatching(format!("({}, {}) is not an edge", i + 1, j + 1)));
            }
        }
        Ok(())
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.pi.len()];
        for (i, &j) in self.pi.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }
}

impl fmt::Display for Matching {
    /// Space-separated 1-based values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.pi.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}
