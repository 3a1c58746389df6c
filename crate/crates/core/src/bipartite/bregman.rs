use super::count::{count_exact, ln_count};
use super::graph::BipartiteGraph;
use crate::error::Result;

/// log( prod_i d_i!^{1/d_i} / M ): the permanent upper bound divided by the
/// true count, i.e. the log of the largest possible overestimate factor.
pub fn bregman_bound(g: &BipartiteGraph) -> Result<f64> {
    let m = count_exact(g)?;
    let mut s = 0.0;
    for i in 0..g.n() {
        let d = g.degree(i);
        let lf: f64 = (2..=d).map(|k| (k as f64).ln()).sum();
        s += lf / d as f64;
    }
    Ok(s - ln_count(&m))
}

/// The same bound with every row given the maximum degree D:
/// log( (D!)^{n/D} / M ), which is 6^{n/3}/F_{n,1} on F_{n,1}.
pub fn bregman_max_degree_bound(g: &BipartiteGraph) -> Result<f64> {
    let m = count_exact(g)?;
    let d = (0..g.n()).map(|i| g.degree(i)).max().unwrap_or(1).max(1);
    let lf: f64 = (2..=d).map(|k| (k as f64).ln()).sum();
    Ok(g.n() as f64 * lf / d as f64 - ln_count(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::graph::Family;

    #[test]
    fn single_edge_is_zero() {
        let g = BipartiteGraph::family(Family::Fibonacci(1), 1).unwrap();
        assert_eq!(bregman_bound(&g).unwrap(), 0.0);
    }

    #[test]
    fn fib_n200() {
        let g = BipartiteGraph::family(Family::Fibonacci(1), 200).unwrap();
        let exact = bregman_bound(&g).unwrap();
        let flat = bregman_max_degree_bound(&g).unwrap();
        // the two boundary rows have degree 2
        let corr = 2.0 * (6f64.ln() / 3.0 - 2f64.ln() / 2.0);
        assert!((flat - exact - corr).abs() < 1e-9);
        assert!((flat - 200.0 / 3.0 * 6f64.ln() + 95.91885788076324).abs() < 1e-9);
    }
}
