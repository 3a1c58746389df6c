//! log T samples under uniform matchings, for normality checks.

use crate::analytics::{closed_form_constants, clt_diagnostics, CltDiagnostics};
use crate::bipartite::{BipartiteGraph, UniformSampler};
use crate::error::Result;
use crate::moments::Algorithm;
use crate::sis::Sampler;

use super::estimate::{chunked, sample_rng};

/// log T(pi) for pi uniform on the family graph; random orders draw their
/// order indices from the same per-sample stream.
pub fn uniform_log_weights(alg: Algorithm, n: usize, samples: u64, seed: u64, workers: usize) -> Result<Vec<f64>> {
    let g = BipartiteGraph::family(alg.family(), n)?;
    let (policy, rule) = alg.sampler();
    let sampler = Sampler::new(&g, policy, rule)?;
    let uniform = UniformSampler::new(&g)?;
    let parts = chunked(samples, workers, |a, b| {
        (a..b)
            .map(|i| {
                let mut rng = sample_rng(seed, i);
                let m = uniform.sample(&mut rng);
                sampler.log_weight_for_matching(&m, &mut rng)
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    let mut out = Vec::with_capacity(samples as usize);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Samples and diagnoses one analyzed sampler against its growth constants.
pub fn clt_run(alg: Algorithm, n: usize, samples: u64, seed: u64, workers: usize) -> Result<CltDiagnostics> {
    let p = closed_form_constants().pair(alg)?;
    let x = uniform_log_weights(alg, n, samples, seed, workers)?;
    clt_diagnostics(&x, p.mu, p.sigma2.sqrt(), n)
}
