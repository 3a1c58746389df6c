//! Moment recurrences for the analyzed samplers.
//!
//! Rational generating functions X = U/V give the linear recurrence
//! x_n = u_n - sum_{k>=1} v_k x_{n-k} for all n >= 0 (so the initial
//! coefficients are the truncated series quotient). The two random-order
//! samplers have quadratic convolution recurrences.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::algebra::{Algebra, Base};
use crate::analytics::constants::{gamma2, gamma2_prime, phi, phi2};
use crate::bipartite::Family;
use crate::error::{Error, Result};
use crate::sis::{ChoiceRule, OrderPolicy};

/// Samplers with a moment recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Algorithm {
    RandomFib1,
    FixedFib1,
    GreedyFib1,
    FibStarFixed,
    FibStarGreedy,
    RandomFib2,
    FixedFib2,
    GreedyFib2,
    Fib2StarFixed,
    Dist2Fixed,
    Dist2StarFixed,
}

/// Generating-function identifiers (the algorithms whose X(z, t) is rational).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GfId {
    FixedFib1,
    GreedyFib1,
    FixedFib2,
    GreedyFib2,
    FibStarFixed,
    FibStarGreedy,
    Fib2StarFixed,
    Dist2Fixed,
    Dist2StarFixed,
}

impl Algorithm {
    pub const ALL: [Algorithm; 11] = [
        Algorithm::RandomFib1,
        Algorithm::FixedFib1,
        Algorithm::GreedyFib1,
        Algorithm::FibStarFixed,
        Algorithm::FibStarGreedy,
        Algorithm::RandomFib2,
        Algorithm::FixedFib2,
        Algorithm::GreedyFib2,
        Algorithm::Fib2StarFixed,
        Algorithm::Dist2Fixed,
        Algorithm::Dist2StarFixed,
    ];

    pub fn family(self) -> Family {
        use Algorithm::*;
        match self {
            RandomFib1 | FixedFib1 | GreedyFib1 | FibStarFixed | FibStarGreedy => Family::Fibonacci(1),
            RandomFib2 | FixedFib2 | GreedyFib2 | Fib2StarFixed => Family::Fibonacci(2),
            Dist2Fixed | Dist2StarFixed => Family::Distance(2),
        }
    }

    /// The sampler the recurrence describes.
    pub fn sampler(self) -> (OrderPolicy, ChoiceRule) {
        use Algorithm::*;
        match self {
            RandomFib1 => (OrderPolicy::UniformRandom, ChoiceRule::Uniform),
            FixedFib1 | FixedFib2 | Dist2Fixed => (OrderPolicy::FixedTopDown, ChoiceRule::Uniform),
            GreedyFib1 => (OrderPolicy::GreedyFib1, ChoiceRule::Uniform),
            FibStarFixed => (OrderPolicy::FixedTopDown, ChoiceRule::FibStarFixed),
            FibStarGreedy => (OrderPolicy::GreedyFib1, ChoiceRule::FibStarGreedy),
            RandomFib2 => (OrderPolicy::RandomCycle, ChoiceRule::Uniform),
            GreedyFib2 => (OrderPolicy::GreedyCycleFib2, ChoiceRule::Uniform),
            Fib2StarFixed => (OrderPolicy::FixedTopDown, ChoiceRule::Fib2StarFixed),
            Dist2StarFixed => (OrderPolicy::FixedTopDown, ChoiceRule::Dist2StarFixed),
        }
    }

    pub fn gf(self) -> Option<GfId> {
        use Algorithm::*;
        Some(match self {
            RandomFib1 | RandomFib2 => return None,
            FixedFib1 => GfId::FixedFib1,
            GreedyFib1 => GfId::GreedyFib1,
            FibStarFixed => GfId::FibStarFixed,
            FibStarGreedy => GfId::FibStarGreedy,
            FixedFib2 => GfId::FixedFib2,
            GreedyFib2 => GfId::GreedyFib2,
            Fib2StarFixed => GfId::Fib2StarFixed,
            Dist2Fixed => GfId::Dist2Fixed,
            Dist2StarFixed => GfId::Dist2StarFixed,
        })
    }

    /// Tuned samplers have irrational step probabilities.
    pub fn is_starred(self) -> bool {
        matches!(
            self,
            Algorithm::FibStarFixed | Algorithm::FibStarGreedy | Algorithm::Fib2StarFixed | Algorithm::Dist2StarFixed
        )
    }

    pub fn name(self) -> &'static str {
        use Algorithm::*;
        match self {
            RandomFib1 => "random",
            FixedFib1 => "fixed",
            GreedyFib1 => "greedy",
            FibStarFixed => "fixed-star",
            FibStarGreedy => "greedy-star",
            RandomFib2 => "random",
            FixedFib2 => "fixed",
            GreedyFib2 => "greedy",
            Fib2StarFixed => "fixed-star",
            Dist2Fixed => "fixed",
            Dist2StarFixed => "fixed-star",
        }
    }

    /// Looks up (family, algorithm name) as used on the command line.
    pub fn lookup(family: Family, name: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.family() == family && a.name() == name)
            .ok_or_else(|| Error::Unsupported(format!("no recurrence for algorithm '{name}' on {family}")))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.family(), self.name())
    }
}

impl FromStr for GfId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fixed-fib1" => GfId::FixedFib1,
            "greedy-fib1" => GfId::GreedyFib1,
            "fixed-fib2" => GfId::FixedFib2,
            "greedy-fib2" => GfId::GreedyFib2,
            "fib-star-fixed" => GfId::FibStarFixed,
            "fib-star-greedy" => GfId::FibStarGreedy,
            "fib2-star-fixed" => GfId::Fib2StarFixed,
            "dist2-fixed" => GfId::Dist2Fixed,
            "dist2-star-fixed" => GfId::Dist2StarFixed,
            _ => return Err(Error::InvalidParameter(format!("unknown generating function '{s}'"))),
        })
    }
}

impl GfId {
    pub fn algorithm(self) -> Algorithm {
        match self {
            GfId::FixedFib1 => Algorithm::FixedFib1,
            GfId::GreedyFib1 => Algorithm::GreedyFib1,
            GfId::FixedFib2 => Algorithm::FixedFib2,
            GfId::GreedyFib2 => Algorithm::GreedyFib2,
            GfId::FibStarFixed => Algorithm::FibStarFixed,
            GfId::FibStarGreedy => Algorithm::FibStarGreedy,
            GfId::Fib2StarFixed => Algorithm::Fib2StarFixed,
            GfId::Dist2Fixed => Algorithm::Dist2Fixed,
            GfId::Dist2StarFixed => Algorithm::Dist2StarFixed,
        }
    }
}

/// Numerator and denominator coefficients of X(z, t), lowest degree first.
pub fn gf_coefficients<A: Algebra>(a: &A, id: GfId) -> (Vec<A::E>, Vec<A::E>) {
    let p = |b: u64| a.pow_t(Base::Int(b));
    let r = |b: f64| a.pow_t(Base::Real(b));
    let c = |v: i64| a.cst(v, 1);
    let one = a.one();
    let zero = a.zero();
    match id {
        GfId::FixedFib1 => (vec![one.clone(), one.clone() - p(2)], vec![one, zero.clone() - p(2), zero - p(2)]),
        GfId::GreedyFib1 => (
            vec![one.clone(), one.clone(), c(2) * p(2) - c(2) * p(3)],
            vec![one, zero.clone(), zero.clone() - c(2) * p(3), zero - p(3)],
        ),
        GfId::FixedFib2 => (
            vec![one.clone(), one.clone() - p(3), c(2) * (p(2) - p(3))],
            vec![one, zero.clone() - p(3), zero.clone() - p(3), zero - p(3)],
        ),
        GfId::GreedyFib2 => (
            vec![
                one.clone(),
                one.clone(),
                c(2) * p(2),
                c(4) * p(4) - c(4) * p(9),
                c(7) * p(7) - c(7) * p(9),
            ],
            vec![
                one,
                zero.clone(),
                zero.clone(),
                zero.clone() - c(4) * p(9),
                zero.clone() - c(3) * p(9),
                zero - c(2) * p(9),
            ],
        ),
        GfId::FibStarFixed => {
            let f = phi();
            (
                vec![one.clone(), one.clone() - r(f)],
                vec![one, zero.clone() - r(f), zero - r(f * f)],
            )
        }
        GfId::FibStarGreedy => {
            let f = phi();
            (
                vec![one.clone(), one.clone(), c(2) * (p(2) - r(f * f))],
                vec![one, zero.clone(), zero.clone() - c(2) * r(f * f), zero - r(f.powi(3))],
            )
        }
        GfId::Fib2StarFixed => {
            let q = phi2();
            (
                vec![one.clone(), one.clone() - r(q), c(2) * p(2) - r(q) - r(q * q)],
                vec![one, zero.clone() - r(q), zero.clone() - r(q * q), zero - r(q.powi(3))],
            )
        }
        GfId::Dist2Fixed => {
            let t3 = p(3);
            let t9 = p(9);
            let t27 = p(27);
            let u = vec![
                one.clone(),
                one.clone() - t3.clone(),
                c(2) * p(2) - c(2) * t3.clone() - t9.clone(),
                t3.clone() * (c(4) * p(2) - one.clone() - c(2) * t3.clone() - t9.clone()),
                c(2) * (p(2) - t3.clone()) * t3.clone() * (t3.clone() - one.clone()),
                zero.clone() - c(2) * (p(2) - t3.clone()) * t9.clone(),
            ];
            let v = vec![
                one,
                zero.clone() - t3.clone(),
                zero.clone() - t3 - t9.clone(),
                zero.clone() - t9.clone() - t27.clone(),
                zero.clone() - t9 - t27.clone(),
                t27.clone(),
                t27,
            ];
            (u, v)
        }
        GfId::Dist2StarFixed => {
            let g = gamma2();
            let gp = gamma2_prime();
            let g1 = r(g);
            let g2 = r(g * g);
            let g3 = r(g.powi(3));
            let a2 = r(2.0 / gp);
            let b = r(g / gp);
            let d = r(2.0 * g);
            let u = vec![
                one.clone(),
                one.clone() - g1.clone(),
                c(2) * p(2) - g1.clone() - c(2) * g2.clone(),
                c(6) * p(6) - c(2) * d.clone() - c(2) * g2.clone() - c(2) * g3.clone(),
                g1.clone() * (c(2) * a2.clone() + b.clone() - c(2) * d.clone() - g3.clone()),
                g2.clone() * (zero.clone() - c(6) * p(6) + c(2) * a2 + c(2) * d + b + g3.clone()),
            ];
            let v = vec![
                one,
                zero.clone() - g1,
                zero.clone() - c(2) * g2,
                zero.clone() - c(2) * g3,
                zero - c(2) * r(g.powi(4)),
                r(g.powi(5)),
                r(g.powi(6)),
            ];
            (u, v)
        }
    }
}

/// Normalized x_0..=x_n of a rational generating function.
pub fn gf_sequence<A: Algebra>(a: &A, id: GfId, n: usize) -> Vec<A::E> {
    let (u, v) = gf_coefficients(a, id);
    let mut x: Vec<A::E> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut s = match u.get(m) {
            Some(um) => um.clone() * a.ratio(&[], m),
            None => a.zero(),
        };
        for (k, vk) in v.iter().enumerate().skip(1).take(m) {
            s = s - vk.clone() * x[m - k].clone() * a.ratio(&[m - k], m);
        }
        x.push(s);
    }
    x
}

/// Random order on F_{n,1}:
/// n x_n = 2(2^t - 3^t)(x_{n-1} + x_{n-2}) + 3^t (S_1 + 2 S_2),
/// S_k = sum_i x_i x_{n-k-i}; x_0 = x_1 = 1.
pub fn random_fib1_sequence<A: Algebra>(a: &A, n: usize) -> Vec<A::E> {
    let c1 = a.cst(2, 1) * (a.pow_t(Base::Int(2)) - a.pow_t(Base::Int(3)));
    let c3 = a.pow_t(Base::Int(3));
    let mut x: Vec<A::E> = Vec::with_capacity(n + 1);
    for m in 0..=n.min(1) {
        x.push(a.ratio(&[], m));
    }
    for m in 2..=n {
        let lin = c1.clone() * (x[m - 1].clone() * a.ratio(&[m - 1], m) + x[m - 2].clone() * a.ratio(&[m - 2], m));
        let conv = |k: usize| {
            let mut s = a.zero();
            for i in 0..=m - k {
                s = s + x[i].clone() * x[m - k - i].clone() * a.ratio(&[i, m - k - i], m);
            }
            s
        };
        let total = lin + c3.clone() * (conv(1) + a.cst(2, 1) * conv(2));
        x.push(a.div_n(total, m));
    }
    x
}

/// Random cycle order on F_{n,2}:
/// n x_n = 2(3^t-6^t)(x_{n-1}+x_{n-2}+x_{n-3}) + 2(5^t-6^t)(2x_{n-2}+2x_{n-3}+x_{n-4})
///         + 6^t (S_1 + 2 S_2 + 3 S_3),
/// x_0 = x_1 = 1, x_2 = 2^{t+1}, x_3 = (4/3)(3^t (1+2^t) + 4^t).
pub fn random_fib2_sequence<A: Algebra>(a: &A, n: usize) -> Vec<A::E> {
    let p = |b: u64| a.pow_t(Base::Int(b));
    let ca = a.cst(2, 1) * (p(3) - p(6));
    let cb = a.cst(2, 1) * (p(5) - p(6));
    let seeds = [
        a.one(),
        a.one(),
        a.cst(2, 1) * p(2),
        a.cst(4, 3) * (p(3) * (a.one() + p(2)) + p(4)),
    ];
    let mut x: Vec<A::E> = Vec::with_capacity(n + 1);
    for (m, s) in seeds.into_iter().enumerate().take(n + 1) {
        x.push(s * a.ratio(&[], m));
    }
    for m in 4..=n {
        let r = |k: usize| x[m - k].clone() * a.ratio(&[m - k], m);
        let lin = ca.clone() * (r(1) + r(2) + r(3))
            + cb.clone() * (a.cst(2, 1) * r(2) + a.cst(2, 1) * r(3) + r(4));
        let conv = |k: usize| {
            let mut s = a.zero();
            for i in 0..=m - k {
                s = s + x[i].clone() * x[m - k - i].clone() * a.ratio(&[i, m - k - i], m);
            }
            s
        };
        let total = lin + p(6) * (conv(1) + a.cst(2, 1) * conv(2) + a.cst(3, 1) * conv(3));
        x.push(a.div_n(total, m));
    }
    x
}

/// Coupled recurrence for the starred D_{n,2} sampler (x: closed prefix,
/// y: the first left took right 2), used to cross-check its generating function.
pub fn dist2_star_coupled<A: Algebra>(a: &A, n: usize) -> Vec<A::E> {
    let g = gamma2();
    let gp = gamma2_prime();
    let r = |b: f64| a.pow_t(Base::Real(b));
    let mut x: Vec<A::E> = Vec::with_capacity(n + 1);
    let mut y: Vec<A::E> = Vec::with_capacity(n + 1);
    let xs = [a.one(), a.one(), a.cst(2, 1) * a.pow_t(Base::Int(2)), a.cst(6, 1) * a.pow_t(Base::Int(6))];
    let ys = [a.zero(), a.zero(), a.one(), a.cst(2, 1) * a.pow_t(Base::Int(2))];
    for m in 0..=n.min(3) {
        x.push(xs[m].clone() * a.ratio(&[], m));
        y.push(ys[m].clone() * a.ratio(&[], m));
    }
    for m in 4..=n {
        let ym = r(gp * g * g) * x[m - 2].clone() * a.ratio(&[m - 2], m)
            + r(gp * g.powi(3)) * x[m - 3].clone() * a.ratio(&[m - 3], m)
            + r(g * g) * y[m - 2].clone() * a.ratio(&[m - 2], m);
        let xm = r(g) * x[m - 1].clone() * a.ratio(&[m - 1], m)
            + r(1.0 / gp) * ym.clone()
            + r(g / gp) * y[m - 1].clone() * a.ratio(&[m - 1], m)
            + r(g.powi(3)) * x[m - 3].clone() * a.ratio(&[m - 3], m)
            + r(g.powi(4)) * x[m - 4].clone() * a.ratio(&[m - 4], m);
        x.push(xm);
        y.push(ym);
    }
    x
}

/// Normalized sequence x_0..=x_n for any algorithm.
pub fn sequence<A: Algebra>(a: &A, alg: Algorithm, n: usize) -> Vec<A::E> {
    match alg {
        Algorithm::RandomFib1 => random_fib1_sequence(a, n),
        Algorithm::RandomFib2 => random_fib2_sequence(a, n),
        _ => gf_sequence(a, alg.gf().expect("rational"), n),
    }
}
