//! Exact log-weight moments from recurrences, and an enumeration oracle.

pub mod algebra;
mod exhaustive;
pub mod jet;
pub mod recurrences;
mod report;

use num_bigint::BigUint;
use num_rational::BigRational;

pub use algebra::{Algebra, Base, CountTable, ExactAlg, JetAlg, RealAlg};
pub use exhaustive::{exhaustive_moments, exhaustive_moments_with, exhaustive_second_moment_exact, ExactT, TWeight};
pub use jet::Jet2;
pub use recurrences::{gf_coefficients, gf_sequence, sequence, Algorithm, GfId};
pub use report::MomentReport;

use crate::bipartite::{family_counts, Family};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Exact family counts 0..=n.
pub fn counts(family: Family, n: usize) -> Vec<BigUint> {
    family_counts(family, n).expect("built-in family")
}

/// Normalized jets x_k / M_k^{1+t} at t = 0 for k = 0..=n.
pub fn moment_jets(alg: Algorithm, n: usize) -> Vec<Jet2<f64>> {
    let table = CountTable::new(&counts(alg.family(), n));
    sequence(&JetAlg::<f64>::new(&table), alg, n)
}

/// Single-precision jets (for cross-checks of the generic path).
pub fn moment_jets_f32(alg: Algorithm, n: usize) -> Vec<Jet2<f32>> {
    let table = CountTable::new(&counts(alg.family(), n));
    sequence(&JetAlg::<f32>::new(&table), alg, n)
}

/// E[T^t] / M^{t} ... normalized values x_k / M_k^{1+t} at a real t.
pub fn moment_values(alg: Algorithm, n: usize, t: f64) -> Vec<f64> {
    let table = CountTable::new(&counts(alg.family(), n));
    sequence(&RealAlg { counts: &table, t }, alg, n)
}

/// (E_u log T, Var_u log T) for k = 0..=n.
pub fn mean_variance_sequence(alg: Algorithm, n: usize) -> Vec<(f64, f64)> {
    let c = counts(alg.family(), n);
    let table = CountTable::new(&c);
    sequence(&JetAlg::<f64>::new(&table), alg, n)
        .into_iter()
        .enumerate()
        .map(|(k, j)| {
            let l = j.v1 / j.v0;
            (l + table.ln_count(k), j.v2 / j.v0 - l * l)
        })
        .collect()
}

/// Full report from the recurrence of `alg`.
pub fn moments(alg: Algorithm, n: usize) -> MomentReport {
    let c = counts(alg.family(), n);
    let table = CountTable::new(&c);
    let jet = sequence(&JetAlg::<f64>::new(&table), alg, n)[n];
    let nv = sequence(&RealAlg { counts: &table, t: 1.0 }, alg, n)[n];
    MomentReport::from_normalized(
        n,
        alg.family().to_string(),
        alg.name().to_string(),
        jet,
        nv.ln(),
        &c[n],
        table.ln_count(n),
    )
}

pub fn moments_fixed_fib1(n: usize) -> MomentReport {
    moments(Algorithm::FixedFib1, n)
}

pub fn moments_random_fib1(n: usize) -> MomentReport {
    moments(Algorithm::RandomFib1, n)
}

pub fn moments_greedy_fib1(n: usize) -> MomentReport {
    moments(Algorithm::GreedyFib1, n)
}

pub fn moments_random_fib2(n: usize) -> MomentReport {
    moments(Algorithm::RandomFib2, n)
}

pub fn moments_from_gf(id: GfId, n: usize) -> MomentReport {
    moments(id.algorithm(), n)
}

/// log E[T^2] under the sampling measure (the t = 1 value of the recurrence).
pub fn second_moment_exact(alg: Algorithm, n: usize) -> f64 {
    let c = counts(alg.family(), n);
    let table = CountTable::new(&c);
    let nv = sequence(&RealAlg { counts: &table, t: 1.0 }, alg, n)[n];
    nv.ln() + 2.0 * table.ln_count(n)
}

/// E[T^2] as an exact rational (uniform-rule samplers, n <= exact limit).
pub fn second_moment_rational(alg: Algorithm, n: usize, limits: &Limits) -> Result<BigRational> {
    if alg.is_starred() {
        return Err(Error::Unsupported("tuned samplers have irrational weights".into()));
    }
    if n > limits.exact_n {
        return Err(Error::LimitExceeded { what: "exact mode n", value: n.to_string(), limit: limits.exact_n as u64 });
    }
    Ok(sequence(&ExactAlg, alg, n).swap_remove(n))
}
