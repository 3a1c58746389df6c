//! Normality diagnostics of standardized log-weights.

use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 1000;
const HIST_EDGES: (f64, f64, usize) = (-4.0, 4.0, 16);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CltDiagnostics {
    pub n: usize,
    pub samples: usize,
    /// mean and variance of the standardized values
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// sup |F_emp - Phi|
    pub ks: f64,
    /// bins of width 0.5 on [-4, 4], plus the two tails
    pub below: usize,
    pub histogram: Vec<usize>,
    pub above: usize,
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Kolmogorov-Smirnov distance of a sample to the standard normal.
pub fn ks_normal(z: &[f64]) -> f64 {
    let mut s = z.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = normal_cdf(x);
            (c - i as f64 / m).max((i + 1) as f64 / m - c)
        })
        .fold(0.0, f64::max)
}

/// Diagnostics of (x - mu n) / (sigma sqrt n) over the samples x = log T.
pub fn clt_diagnostics(samples: &[f64], mu: f64, sigma: f64, n: usize) -> Result<CltDiagnostics> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { got: samples.len(), need: MIN_SAMPLES });
    }
    if !(sigma > 0.0) || n == 0 {
        return Err(Error::InvalidParameter("sigma and n must be positive".into()));
    }
    let scale = sigma * (n as f64).sqrt();
    let z: Vec<f64> = samples.iter().map(|x| (x - mu * n as f64) / scale).collect();
    let m = z.len() as f64;
    let mean = z.iter().sum::<f64>() / m;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in &z {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= m;
    m3 /= m;
    m4 /= m;
    if m2 <= 1e-300 {
        return Err(Error::Degenerate("standardized samples have zero variance".into()));
    }
    let (lo, hi, bins) = HIST_EDGES;
    let width = (hi - lo) / bins as f64;
    let mut histogram = vec![0usize; bins];
    let (mut below, mut above) = (0, 0);
    for &x in &z {
        if x < lo {
            below += 1;
        } else if x >= hi {
            above += 1;
        } else {
            histogram[(((x - lo) / width) as usize).min(bins - 1)] += 1;
        }
    }
    Ok(CltDiagnostics {
        n,
        samples: z.len(),
        mean,
        variance: m2,
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
        ks: ks_normal(&z),
        below,
        histogram,
        above,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn normal_input_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<f64> = (0..20_000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let d = clt_diagnostics(&x, 0.0, 1.0, 1).unwrap();
        assert!(d.ks <= 0.02 && d.skewness.abs() < 0.1 && d.excess_kurtosis.abs() < 0.2, "{d:?}");
        assert_eq!(d.below + d.above + d.histogram.iter().sum::<usize>(), 20_000);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(clt_diagnostics(&[1.0; 1000], 0.0, 1.0, 4), Err(Error::Degenerate(_))));
        assert!(matches!(clt_diagnostics(&[1.0; 10], 0.0, 1.0, 4), Err(Error::InsufficientSamples { .. })));
        assert!(clt_diagnostics(&[1.0; 1000], 0.0, 0.0, 4).is_err());
    }

    #[test]
    fn cdf_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-16);
        let d = normal_cdf(1.96) - 0.9750021048517795;
        assert!(d.abs() < 1e-10, "{d}");
    }
}
