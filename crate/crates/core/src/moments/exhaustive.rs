//! Brute-force moments over all matchings.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Zero};

use super::jet::Jet2;
use super::report::MomentReport;
use crate::bipartite::{count_exact, enumerate_matchings_with, BipartiteGraph};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::scalar::ln_biguint;
use crate::sis::{ChoiceRule, OrderPolicy, PathValue, Sampler};

/// Order-averaged E[T^t] of a matching as a jet.
impl<S: Float> PathValue for Jet2<S> {
    fn uniform_step(c: u64) -> Self {
        Jet2::pow_t(S::from(c).expect("count"))
    }
    fn tuned_step(p: f64) -> Result<Self> {
        Ok(Jet2::pow_t(S::from(1.0 / p).expect("float")))
    }
    fn inv_len(len: u64) -> Self {
        Jet2::constant(S::one() / S::from(len).expect("count"))
    }
}

/// Order-averaged T of a matching (its contribution to E[T^2]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TWeight(pub f64);

impl Add for TWeight {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        TWeight(self.0 + o.0)
    }
}

impl Mul for TWeight {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        TWeight(self.0 * o.0)
    }
}

impl Zero for TWeight {
    fn zero() -> Self {
        TWeight(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
}

impl One for TWeight {
    fn one() -> Self {
        TWeight(1.0)
    }
}

impl PathValue for TWeight {
    fn uniform_step(c: u64) -> Self {
        TWeight(c as f64)
    }
    fn tuned_step(p: f64) -> Result<Self> {
        Ok(TWeight(1.0 / p))
    }
    fn inv_len(len: u64) -> Self {
        TWeight(1.0 / len as f64)
    }
}

/// Exact order-averaged T under uniform rules.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactT(pub BigRational);

impl Add for ExactT {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ExactT(self.0 + o.0)
    }
}

impl Mul for ExactT {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ExactT(self.0 * o.0)
    }
}

impl Zero for ExactT {
    fn zero() -> Self {
        ExactT(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for ExactT {
    fn one() -> Self {
        ExactT(BigRational::one())
    }
}

impl PathValue for ExactT {
    fn uniform_step(c: u64) -> Self {
        ExactT(BigRational::from_integer(BigInt::from(c)))
    }
    fn tuned_step(_p: f64) -> Result<Self> {
        Err(Error::Unsupported("exact second moments need the uniform rule".into()))
    }
    fn inv_len(len: u64) -> Self {
        ExactT(BigRational::new(BigInt::one(), BigInt::from(len)))
    }
}

fn check_size(g: &BipartiteGraph, limits: &Limits) -> Result<()> {
    let m = count_exact(g)?;
    if m > limits.exhaustive.into() {
        return Err(Error::LimitExceeded { what: "matchings for exhaustive moments", value: m.to_string(), limit: limits.exhaustive });
    }
    Ok(())
}

/// Moments by enumeration. For random orders each matching contributes its
/// order-averaged E[T^t], which is what the recurrences compute.
pub fn exhaustive_moments(g: &BipartiteGraph, policy: OrderPolicy, rule: ChoiceRule) -> Result<MomentReport> {
    exhaustive_moments_with(g, policy, rule, &Limits::default())
}

pub fn exhaustive_moments_with(
    g: &BipartiteGraph,
    policy: OrderPolicy,
    rule: ChoiceRule,
    limits: &Limits,
) -> Result<MomentReport> {
    check_size(g, limits)?;
    let s = Sampler::new(g, policy.clone(), rule)?;
    let count = count_exact(g)?;
    let log_count = ln_biguint(&count);
    let mut sum1 = 0.0;
    let mut sum2 = 0.0;
    let mut t_sum = 0.0;
    let mut m_f = 0.0;
    for m in enumerate_matchings_with(g, limits)? {
        let j: Jet2<f64> = s.path_value(&m)?;
        sum1 += j.v1;
        sum2 += j.v2;
        t_sum += s.path_value::<TWeight>(&m)?.0;
        m_f += 1.0;
    }
    // normalized jet of x_n / M^{1+t}: (1, E log T - log M, E (log T - log M)^2)
    let mean = sum1 / m_f;
    let e2 = sum2 / m_f;
    let l = mean - log_count;
    let jet = Jet2::new(1.0, l, e2 - 2.0 * mean * log_count + log_count * log_count);
    let log_n_var = t_sum.ln() - 2.0 * log_count;
    let alg = format!("{policy}/{rule}");
    Ok(MomentReport::from_normalized(g.n(), g.family_tag().to_string(), alg, jet, log_n_var, &count, log_count))
}

/// Exact E[T^2] = sum over matchings of the order-averaged T.
pub fn exhaustive_second_moment_exact(g: &BipartiteGraph, policy: OrderPolicy, rule: ChoiceRule) -> Result<BigRational> {
    let limits = Limits::default();
    check_size(g, &limits)?;
    let s = Sampler::new(g, policy, rule)?;
    let mut total = BigRational::zero();
    for m in enumerate_matchings_with(g, &limits)? {
        total += s.path_value::<ExactT>(&m)?.0;
    }
    Ok(total)
}
