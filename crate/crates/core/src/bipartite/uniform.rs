//! Exact uniform sampling of perfect matchings of banded graphs.

use rand::Rng;

use super::band::BandDp;
use super::graph::{BipartiteGraph, Matching};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Draws pi uniformly by walking the transfer DP forward with probabilities
/// proportional to completion counts.
#[derive(Debug, Clone)]
pub struct UniformSampler {
    g: BipartiteGraph,
    dp: BandDp,
}

impl UniformSampler {
    pub fn new(g: &BipartiteGraph) -> Result<Self> {
        let dp = BandDp::new(g, &Limits::default())?;
        if !dp.feasible() {
            return Err(Error::NoPerfectMatching);
        }
        Ok(UniformSampler { g: g.clone(), dp })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Matching {
        let n = self.g.n();
        let win = self.dp.win;
        let mut mask = win.initial();
        let mut pi = Vec::with_capacity(n);
        let mut cand: Vec<(usize, u32, f64)> = Vec::with_capacity(8);
        for i in 0..n {
            cand.clear();
            let mut tot = 0.0;
            for &j in self.g.neighbors(i) {
                if let Some(t) = win.step(i, mask, j) {
                    let w = self.dp.weight(i + 1, t);
                    if w > 0.0 {
                        tot += w;
                        cand.push((j, t, w));
                    }
                }
            }
            let mut u = rng.random::<f64>() * tot;
            let mut pick = cand.len() - 1;
            for (k, c) in cand.iter().enumerate() {
                if u < c.2 {
                    pick = k;
                    break;
                }
                u -= c.2;
            }
            pi.push(cand[pick].0);
            mask = cand[pick].1;
        }
        Matching::new(pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::graph::Family;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn frequencies_are_flat() {
        let g = BipartiteGraph::family(Family::Distance(2), 4).unwrap();
        let s = UniformSampler::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut freq: HashMap<Matching, usize> = HashMap::new();
        let draws = 70_000;
        for _ in 0..draws {
            let m = s.sample(&mut rng);
            m.validate(&g).unwrap();
            *freq.entry(m).or_default() += 1;
        }
        assert_eq!(freq.len(), 14);
        let p = 1.0 / 14.0;
        let sd = (draws as f64 * p * (1.0 - p)).sqrt();
        for c in freq.values() {
            assert!((*c as f64 - draws as f64 * p).abs() < 4.5 * sd);
        }
    }
}
