//! Parallel, seed-deterministic Monte Carlo estimation.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::accum::{tree_merge, Acc};
use crate::bipartite::{BipartiteGraph, Matching};
use crate::error::{Error, Result};
use crate::sis::{ChoiceRule, OrderPolicy, Sampler};

/// Samples per chunk of the fixed accumulation tree.
pub const CHUNK: usize = 1024;

/// The rng of sample `index`: one ChaCha stream per index.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub n: usize,
    pub family: String,
    pub algorithm: String,
    pub samples: u64,
    /// log of (1/N) sum T
    pub log_estimate: f64,
    pub estimate: f64,
    /// sd(T) / (mean(T) sqrt N)
    pub rel_stderr: f64,
    /// empirical E T^2 / (E T)^2
    pub empirical_n_var: f64,
    /// empirical N^v above N / 10
    pub unreliable: bool,
    pub mean_log_t: f64,
    pub var_log_t: f64,
    pub seed: u64,
    #[serde(skip)]
    pub wall_time_s: f64,
}

impl PartialEq for EstimateReport {
    /// Wall time is excluded; everything else is a function of (seed, N).
    fn eq(&self, o: &Self) -> bool {
        (
            self.n,
            &self.family,
            &self.algorithm,
            self.samples,
            self.log_estimate.to_bits(),
            self.rel_stderr.to_bits(),
            self.empirical_n_var.to_bits(),
            self.mean_log_t.to_bits(),
            self.var_log_t.to_bits(),
            self.seed,
        ) == (
            o.n,
            &o.family,
            &o.algorithm,
            o.samples,
            o.log_estimate.to_bits(),
            o.rel_stderr.to_bits(),
            o.empirical_n_var.to_bits(),
            o.mean_log_t.to_bits(),
            o.var_log_t.to_bits(),
            o.seed,
        )
    }
}

impl EstimateReport {
    fn from_acc(g: &BipartiteGraph, name: String, acc: &Acc, seed: u64, t0: Instant) -> Self {
        let nv = acc.log_rel_second().exp();
        let n = acc.count as f64;
        EstimateReport {
            n: g.n(),
            family: g.family_tag().to_string(),
            algorithm: name,
            samples: acc.count,
            log_estimate: acc.log_mean(),
            estimate: acc.log_mean().exp(),
            rel_stderr: ((nv - 1.0).max(0.0) / n).sqrt(),
            empirical_n_var: nv,
            unreliable: nv > n / 10.0,
            mean_log_t: acc.mean,
            var_log_t: acc.var_log(),
            seed,
            wall_time_s: t0.elapsed().as_secs_f64(),
        }
    }
}

pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Runs `per_sample` over indices 0..samples in fixed chunks; results come
/// back in index order whatever the worker count.
pub(crate) fn chunked<T: Send>(
    samples: u64,
    workers: usize,
    per_chunk: impl Fn(u64, u64) -> T + Sync + Send,
) -> Result<Vec<T>> {
    let chunks = samples.div_ceil(CHUNK as u64);
    with_pool(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| per_chunk(c * CHUNK as u64, ((c + 1) * CHUNK as u64).min(samples)))
            .collect()
    })
}

fn label(policy: &OrderPolicy, rule: ChoiceRule) -> String {
    format!("{policy}/{rule}")
}

/// Unbiased estimate of the matching count from N sampled weights.
pub fn estimate_count(
    g: &BipartiteGraph,
    policy: OrderPolicy,
    rule: ChoiceRule,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<EstimateReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let t0 = Instant::now();
    let name = label(&policy, rule);
    let sampler = Sampler::new(g, policy, rule)?;
    let parts = chunked(samples, workers, |a, b| {
        let mut acc = Acc::default();
        for i in a..b {
            acc.push(sampler.sample_log_weight(&mut sample_rng(seed, i)));
        }
        acc
    })?;
    Ok(EstimateReport::from_acc(g, name, &tree_merge(&parts), seed, t0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatisticEstimate {
    /// log of (1/N) sum delta T; -inf when no sample satisfies the predicate
    pub log_count: f64,
    pub count: f64,
    /// (sum delta T) / (sum T)
    pub ratio: f64,
    /// the plain count estimate from the same traces
    pub log_total: f64,
    pub hits: u64,
    pub samples: u64,
}

/// Count form and ratio form of a predicate estimate, from one set of traces.
pub fn estimate_statistic(
    g: &BipartiteGraph,
    policy: OrderPolicy,
    rule: ChoiceRule,
    predicate: impl Fn(&Matching) -> bool + Sync,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<StatisticEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let sampler = Sampler::new(g, policy, rule)?;
    let parts = chunked(samples, workers, |a, b| {
        let (mut all, mut hit) = (Acc::default(), Acc::default());
        for i in a..b {
            let (m, w) = sampler.sample_matching(&mut sample_rng(seed, i));
            all.push(w);
            if predicate(&m) {
                hit.push(w);
            }
        }
        (all, hit)
    })?;
    let all = tree_merge(&parts.iter().map(|p| p.0).collect::<Vec<_>>());
    let hit = tree_merge(&parts.iter().map(|p| p.1).collect::<Vec<_>>());
    let ln_n = (samples as f64).ln();
    let log_count = hit.log_sum() - ln_n;
    Ok(StatisticEstimate {
        log_count,
        count: log_count.exp(),
        ratio: (hit.log_sum() - all.log_sum()).exp(),
        log_total: all.log_sum() - ln_n,
        hits: hit.count,
        samples,
    })
}
