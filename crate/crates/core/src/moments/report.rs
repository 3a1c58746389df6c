use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::jet::Jet2;
use crate::sis::trace::fmt17;

/// Log-weight moments and the derived sample-size criteria.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub n: usize,
    pub family: String,
    pub algorithm: String,
    /// E_u[log T], nats.
    pub mean: f64,
    pub variance: f64,
    /// log E[T^2] under the sampling measure.
    pub second_moment_log: f64,
    /// mean - log M_n
    pub l: f64,
    pub sigma: f64,
    /// exp(L + sigma)
    pub n_star: f64,
    /// E[T^2] / M_n^2
    pub n_var: f64,
    pub log_n_var: f64,
    pub count: String,
    pub log_count: f64,
    /// Built from asymptotic forms rather than exact finite-n moments.
    pub asymptotic: bool,
}

impl MomentReport {
    /// From the normalized jet (1, L, E log^2(T/M)) and log N^v.
    pub fn from_normalized(
        n: usize,
        family: String,
        algorithm: String,
        jet: Jet2<f64>,
        log_n_var: f64,
        count: &BigUint,
        log_count: f64,
    ) -> Self {
        let l = jet.v1 / jet.v0;
        let variance = (jet.v2 / jet.v0 - l * l).max(0.0);
        let sigma = variance.sqrt();
        MomentReport {
            n,
            family,
            algorithm,
            mean: l + log_count,
            variance,
            second_moment_log: log_n_var + 2.0 * log_count,
            l,
            sigma,
            n_star: (l + sigma).exp(),
            n_var: log_n_var.exp(),
            log_n_var,
            count: count.to_string(),
            log_count,
            asymptotic: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for MomentReport {
    /// Flat key=value lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "family={}", self.family)?;
        writeln!(f, "algorithm={}", self.algorithm)?;
        writeln!(f, "count={}", self.count)?;
        for (k, v) in [
            ("log_count", self.log_count),
            ("mean", self.mean),
            ("variance", self.variance),
            ("second_moment_log", self.second_moment_log),
            ("L", self.l),
            ("sigma", self.sigma),
            ("n_star", self.n_star),
            ("n_var", self.n_var),
            ("log_n_var", self.log_n_var),
        ] {
            writeln!(f, "{k}={}", fmt17(v))?;
        }
        writeln!(f, "asymptotic={}", self.asymptotic)
    }
}
