//! Order policies, choice rules and the tuned probability tables.

use std::fmt;

use serde::Serialize;

use crate::analytics::constants::{gamma2, gamma2_prime, phi, phi2};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderPolicy {
    FixedTopDown,
    UniformRandom,
    GreedyFib1,
    GreedyCycleFib2,
    RandomCycle,
    /// 0-based left indices; must be a permutation of 0..n.
    Explicit(Vec<usize>),
}

impl OrderPolicy {
    /// Deterministic orders make P(pi) a product along one path.
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, OrderPolicy::UniformRandom | OrderPolicy::RandomCycle)
    }

    /// Parses fixed, random, greedy, greedy-cycle, cycle, or a 1-based
    /// comma list such as "2,3,1,4".
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "fixed" => OrderPolicy::FixedTopDown,
            "random" => OrderPolicy::UniformRandom,
            "greedy" => OrderPolicy::GreedyFib1,
            "greedy-cycle" => OrderPolicy::GreedyCycleFib2,
            "cycle" => OrderPolicy::RandomCycle,
            _ => {
                let seq: std::result::Result<Vec<usize>, _> =
                    s.split(',').map(|v| v.trim().parse::<usize>()).collect();
                match seq {
                    Ok(v) if v.iter().all(|&x| x >= 1) => OrderPolicy::Explicit(v.iter().map(|x| x - 1).collect()),
                    _ => return Err(Error::InvalidParameter(format!("unknown order '{s}'"))),
                }
            }
        })
    }
}

impl fmt::Display for OrderPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderPolicy::FixedTopDown => f.write_str("fixed"),
            OrderPolicy::UniformRandom => f.write_str("random"),
            OrderPolicy::GreedyFib1 => f.write_str("greedy"),
            OrderPolicy::GreedyCycleFib2 => f.write_str("greedy-cycle"),
            OrderPolicy::RandomCycle => f.write_str("cycle"),
            OrderPolicy::Explicit(v) => {
                let s: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
                f.write_str(&s.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChoiceRule {
    Uniform,
    FibStarFixed,
    FibStarGreedy,
    Fib2StarFixed,
    Dist2StarFixed,
}

impl ChoiceRule {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "uniform" => ChoiceRule::Uniform,
            "fib-star-fixed" => ChoiceRule::FibStarFixed,
            "fib-star-greedy" => ChoiceRule::FibStarGreedy,
            "fib2-star-fixed" => ChoiceRule::Fib2StarFixed,
            "dist2-star-fixed" => ChoiceRule::Dist2StarFixed,
            _ => return Err(Error::InvalidParameter(format!("unknown rule '{s}'"))),
        })
    }
}

impl fmt::Display for ChoiceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChoiceRule::Uniform => "uniform",
            ChoiceRule::FibStarFixed => "fib-star-fixed",
            ChoiceRule::FibStarGreedy => "fib-star-greedy",
            ChoiceRule::Fib2StarFixed => "fib2-star-fixed",
            ChoiceRule::Dist2StarFixed => "dist2-star-fixed",
        })
    }
}

/// Tolerance for the sum of a tuned table before it is renormalized.
pub const TABLE_TOL: f64 = 1e-12;

/// Tuned probability tables, each listed in menu order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarTables {
    /// pi(i) = i, i+1
    pub fib_fixed: [f64; 2],
    /// pi(i) = i-1, i, i+1
    pub fib_greedy: [f64; 3],
    /// pi(i) = i, i+1, i+2
    pub fib2_fixed: [f64; 3],
    /// Closed prefix: 1, 2 (open), 31 (open), 321, 3412.
    pub dist2_case1: [f64; 5],
    /// Right i-1 still free: i-1; i+1 then i-1; i+2 then i-1 (open).
    pub dist2_case2: [f64; 3],
}

fn normalized<const K: usize>(name: &str, mut p: [f64; K]) -> [f64; K] {
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > TABLE_TOL {
        log::warn!("{name} table sums to {s}; renormalizing");
        p.iter_mut().for_each(|v| *v /= s);
    }
    p
}

/// Evaluates the five tuned tables at full float precision.
pub fn star_rule_tables() -> StarTables {
    let f = phi();
    let q = phi2();
    let g = gamma2();
    let gp = gamma2_prime();
    StarTables {
        fib_fixed: normalized("fib-star-fixed", [1.0 / f, 1.0 / (f * f)]),
        fib_greedy: normalized("fib-star-greedy", [1.0 / (f * f), 1.0 / (f * f), 1.0 / f.powi(3)]),
        fib2_fixed: normalized("fib2-star-fixed", [1.0 / q, 1.0 / (q * q), 1.0 / q.powi(3)]),
        dist2_case1: normalized(
            "dist2-star case 1",
            [1.0 / g, gp, gp / g, 1.0 / g.powi(3), 1.0 / g.powi(4)],
        ),
        dist2_case2: normalized(
            "dist2-star case 2",
            [1.0 / (gp * g * g), 1.0 / (gp * g.powi(3)), 1.0 / (g * g)],
        ),
    }
}

/// Raw sums before renormalization, for diagnostics.
pub fn raw_table_sums() -> [f64; 5] {
    let f = phi();
    let q = phi2();
    let g = gamma2();
    let gp = gamma2_prime();
    [
        1.0 / f + 1.0 / (f * f),
        2.0 / (f * f) + 1.0 / f.powi(3),
        1.0 / q + 1.0 / (q * q) + 1.0 / q.powi(3),
        1.0 / g + gp + gp / g + 1.0 / g.powi(3) + 1.0 / g.powi(4),
        1.0 / (gp * g * g) + 1.0 / (gp * g.powi(3)) + 1.0 / (g * g),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_sum_to_one() {
        for s in raw_table_sums() {
            assert!((s - 1.0).abs() < 1e-12, "{s}");
        }
        let t = star_rule_tables();
        assert!((t.dist2_case1.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn policy_parse_roundtrip() {
        let p = OrderPolicy::parse("2,3,1,4").unwrap();
        assert_eq!(p, OrderPolicy::Explicit(vec![1, 2, 0, 3]));
        assert_eq!(p.to_string(), "2,3,1,4");
        for s in ["fixed", "random", "greedy", "greedy-cycle", "cycle"] {
            assert_eq!(OrderPolicy::parse(s).unwrap().to_string(), s);
        }
        assert!(OrderPolicy::parse("0,1").is_err());
        assert_eq!(ChoiceRule::parse("fib2-star-fixed").unwrap(), ChoiceRule::Fib2StarFixed);
    }
}
