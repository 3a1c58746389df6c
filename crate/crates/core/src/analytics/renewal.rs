//! Mean and variance rates of a renewal-reward process with constant reward per renewal.

use crate::error::{Error, Result};

/// (mu, sigma2) for inter-arrival law `dist` = [(length, probability)] and
/// a fixed cost per renewal: mu = c / E X, sigma2 = c^2 Var X / (E X)^3.
pub fn renewal_constants(dist: &[(f64, f64)], step_cost: f64) -> Result<(f64, f64)> {
    let total: f64 = dist.iter().map(|d| d.1).sum();
    if (total - 1.0).abs() > 1e-12 || dist.iter().any(|d| d.1 < 0.0) {
        return Err(Error::NonNormalized(total));
    }
    let m1: f64 = dist.iter().map(|&(x, p)| x * p).sum();
    let m2: f64 = dist.iter().map(|&(x, p)| x * x * p).sum();
    let var = (m2 - m1 * m1).max(0.0);
    Ok((step_cost / m1, step_cost * step_cost * var / m1.powi(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    use crate::analytics::constants::{mu_fixed, mu_greedy, phi, phi2, sigma2_fixed, sigma2_greedy};

    #[test]
    fn greedy_fib1_blocks() {
        let p = phi();
        let (mu, s2) = renewal_constants(&[(2.0, 2.0 / (p * p)), (3.0, 1.0 / p.powi(3))], 3f64.ln()).unwrap();
        assert!((mu - mu_greedy()).abs() < 1e-12);
        assert!((s2 - sigma2_greedy()).abs() < 1e-12);
    }

    #[test]
    fn fixed_fib1_blocks() {
        let p = phi();
        let (mu, s2) = renewal_constants(&[(1.0, 1.0 / p), (2.0, 1.0 / (p * p))], LN_2).unwrap();
        assert!((mu - mu_fixed()).abs() < 1e-12);
        assert!((s2 - sigma2_fixed()).abs() < 1e-12);
        assert!((mu / LN_2 - 0.5 * (1.0 + 1.0 / 5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn greedy_fib2_blocks() {
        let q = phi2();
        let d = [(3.0, 4.0 / q.powi(3)), (4.0, 3.0 / q.powi(4)), (5.0, 2.0 / q.powi(5))];
        let (mu, s2) = renewal_constants(&d, 9f64.ln()).unwrap();
        assert!((mu - 0.6365).abs() < 5e-5);
        assert!((s2 - 0.0514).abs() < 5e-5);
        assert!((mu / 9f64.ln() - 0.2897).abs() < 5e-5);
    }

    #[test]
    fn degenerate_and_invalid() {
        assert_eq!(renewal_constants(&[(1.0, 1.0)], 0.7).unwrap(), (0.7, 0.0));
        assert!(matches!(renewal_constants(&[(1.0, 0.5)], 1.0), Err(Error::NonNormalized(_))));
    }
}
