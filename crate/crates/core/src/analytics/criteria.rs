//! Sample-size criteria, tail bounds and the n^7 crossover.

use serde::Serialize;

use super::constants::{c2, closed_form_constants, d2, gamma2, phi, phi2};
use crate::bipartite::Family;
use crate::error::{Error, Result};
use crate::moments::{Algorithm, MomentReport};

/// (N*, N^v) = (exp(L + sigma), E[T^2]/M^2).
pub fn sample_size_criteria(report: &MomentReport) -> (f64, f64) {
    ((report.l + report.sigma).exp(), report.log_n_var.exp())
}

/// One-sided Chebyshev bound 1/(1+a^2) and the normal tail exp(-a^2/2)/(a sqrt(2 pi)).
pub fn chebyshev_tail(a: f64) -> (f64, f64) {
    let poly = 1.0 / (1.0 + a * a);
    let normal = (-a * a / 2.0).exp() / (a * (2.0 * std::f64::consts::PI).sqrt());
    (poly, normal)
}

/// M_n ~ c g^{n+1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountAsymptotic {
    pub c: f64,
    pub growth: f64,
}

impl CountAsymptotic {
    pub fn of(family: Family) -> Result<Self> {
        match family {
            Family::Fibonacci(1) => Ok(CountAsymptotic { c: 1.0 / 5f64.sqrt(), growth: phi() }),
            Family::Fibonacci(2) => Ok(CountAsymptotic { c: c2(), growth: phi2() }),
            Family::Distance(2) => Ok(CountAsymptotic { c: d2(), growth: gamma2() }),
            other => Err(Error::Unsupported(format!("no count asymptotic for {other}"))),
        }
    }

    pub fn ln_count(&self, n: usize) -> f64 {
        self.c.ln() + (n as f64 + 1.0) * self.growth.ln()
    }
}

/// log N* from the linear forms: mu n - log M_n + sigma sqrt(n).
pub fn asymptotic_log_n_star(alg: Algorithm, n: usize, log_count: f64) -> Result<f64> {
    let p = closed_form_constants().pair(alg)?;
    let m = n as f64;
    Ok(p.mu * m - log_count + (p.sigma2 * m).sqrt())
}

/// First n from which N*(n) > n^7 holds for good, with N* from the linear
/// forms and M_n from its asymptotic. f(n) = log N* - 7 log n falls and then
/// rises (n f'(n) is increasing), so the search bisects on the rising part.
pub fn crossover_vs_n7(alg: Algorithm) -> Result<usize> {
    let ca = CountAsymptotic::of(alg.family())?;
    let p = closed_form_constants().pair(alg)?;
    let f = |n: usize| {
        let m = n as f64;
        p.mu * m - ca.ln_count(n) + (p.sigma2 * m).sqrt() - 7.0 * m.ln()
    };
    let slope = p.mu - ca.growth.ln();
    if slope <= 0.0 {
        return Err(Error::Degenerate(format!("{alg}: N* does not outgrow n^7")));
    }
    let mut lo = 1usize;
    while f(lo + 1) < f(lo) {
        lo += 1;
    }
    if f(lo) > 0.0 {
        return Ok(2);
    }
    let mut hi = lo.max(2) * 2;
    while f(hi) <= 0.0 {
        hi *= 2;
    }
    // invariant: f(lo) <= 0 < f(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}
