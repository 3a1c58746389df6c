//! Exact matching counts.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::band;
use super::graph::{BipartiteGraph, Family};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::scalar::ln_biguint;

pub type BigCount = BigUint;

/// |F_{k,t}| for k = 0..=n: (t+1)-step Fibonacci numbers, x_0 = 1.
///
/// If pi(1) = k+1 then lefts 2..=k+1 are forced onto rights 1..=k, so the
/// first block has size 1..=t+1.
pub fn fib_counts(t: usize, n: usize) -> Vec<BigCount> {
    let mut x: Vec<BigCount> = Vec::with_capacity(n + 1);
    x.push(BigUint::one());
    for k in 1..=n {
        let mut s = BigUint::zero();
        for back in 1..=(t + 1).min(k) {
            s += &x[k - back];
        }
        x.push(s);
    }
    x
}

/// |D_{k,2}| for k = 0..=n via D_{k+1} = 2D_k + 2D_{k-2} - D_{k-4} (k >= 4).
pub fn dist2_counts(n: usize) -> Vec<BigCount> {
    let seed = [1u32, 1, 2, 6, 14];
    let mut d: Vec<BigInt> = seed.iter().take(n + 1).map(|&v| BigInt::from(v)).collect();
    while d.len() <= n {
        let k = d.len() - 1;
        let v = BigInt::from(2) * &d[k] + BigInt::from(2) * &d[k - 2] - &d[k - 4];
        d.push(v);
    }
    d.into_iter().map(|v| v.to_biguint().expect("counts are positive")).collect()
}

/// D'_{n,2} = #{pi in D_{n,2} : pi(1) = 2} = sum_{k=0}^{n-2} D_{k,2}.
pub fn count_prefix_d2(n: usize) -> BigCount {
    if n < 2 {
        return BigUint::zero();
    }
    dist2_counts(n).iter().take(n - 1).sum()
}

/// Family count sequence 0..=n where a closed recurrence exists.
pub fn family_counts(family: Family, n: usize) -> Option<Vec<BigCount>> {
    match family {
        Family::Fibonacci(t) => Some(fib_counts(t, n)),
        Family::Distance(2) => Some(dist2_counts(n)),
        _ => None,
    }
}

pub fn count_exact(g: &BipartiteGraph) -> Result<BigCount> {
    count_exact_with(g, &Limits::default())
}

/// Exact count: closed recurrences for built-in families, otherwise the
/// band transfer DP, otherwise Ryser for small n.
pub fn count_exact_with(g: &BipartiteGraph, limits: &Limits) -> Result<BigCount> {
    let n = g.n();
    if let Some(c) = family_counts(g.family_tag(), n) {
        return Ok(c.into_iter().nth(n).expect("length n + 1"));
    }
    match band::count_restricted(g, limits, |_, _| true) {
        Ok(c) => Ok(c),
        Err(e @ Error::UnsupportedWidth { .. }) => {
            if n <= limits.ryser_n {
                Ok(ryser(g))
            } else {
                Err(e)
            }
        }
        Err(e) => Err(e),
    }
}

/// Natural log of a count.
pub fn ln_count(c: &BigCount) -> f64 {
    ln_biguint(c)
}

/// Permanent of the 0-1 biadjacency matrix by Ryser's formula over Gray-code
/// ordered column subsets; i128 products with a BigInt fallback on overflow.
pub fn ryser(g: &BipartiteGraph) -> BigCount {
    let n = g.n();
    if n == 0 {
        return BigUint::one();
    }
    assert!(n < 63, "Ryser fallback is for small n");
    let cols: Vec<Vec<usize>> = {
        let mut c = vec![Vec::new(); n];
        for i in 0..n {
            for &j in g.neighbors(i) {
                c[j].push(i);
            }
        }
        c
    };
    let mut rowsum = vec![0i64; n];
    let mut total = BigInt::zero();
    let mut gray: u64 = 0;
    for k in 1..(1u64 << n) {
        let bit = k.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let delta = if gray & (1 << bit) != 0 { 1 } else { -1 };
        for &i in &cols[bit] {
            rowsum[i] += delta;
        }
        if rowsum.iter().any(|&r| r == 0) {
            continue;
        }
        let mut acc: Option<i128> = Some(1);
        for &r in &rowsum {
            acc = acc.and_then(|a| a.checked_mul(r as i128));
        }
        let prod = match acc {
            Some(v) => BigInt::from(v),
            None => rowsum.iter().fold(BigInt::one(), |a, &r| a * BigInt::from(r)),
        };
        let size = gray.count_ones() as usize;
        if (n - size) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    debug_assert!(!total.is_negative());
    total.to_biguint().expect("permanent is nonnegative")
}

/// Count as f64 when it fits (for small-n reporting).
pub fn count_f64(c: &BigCount) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        let f = fib_counts(1, 10);
        assert_eq!(f[4], BigUint::from(5u32));
        assert_eq!(f[10], BigUint::from(89u32));
        let t = fib_counts(2, 6);
        let want = [1u32, 1, 2, 4, 7, 13, 24];
        assert_eq!(t, want.iter().map(|&v| BigUint::from(v)).collect::<Vec<_>>());
        let d = dist2_counts(5);
        assert_eq!(d[4], BigUint::from(14u32));
        assert_eq!(d[5], BigUint::from(31u32));
    }

    #[test]
    fn prefix_d2() {
        assert_eq!(count_prefix_d2(2), BigUint::from(1u32));
        assert_eq!(count_prefix_d2(4), BigUint::from(4u32));
        assert_eq!(count_prefix_d2(0), BigUint::zero());
    }

    #[test]
    fn ryser_matches_families() {
        let g = BipartiteGraph::family(Family::Distance(2), 7).unwrap();
        assert_eq!(ryser(&g), dist2_counts(7)[7]);
        let g = BipartiteGraph::family(Family::Fibonacci(3), 8).unwrap();
        assert_eq!(ryser(&g), fib_counts(3, 8)[8]);
    }

    #[test]
    fn empty_graph_has_one_matching() {
        let g = BipartiteGraph::family(Family::Fibonacci(1), 0).unwrap();
        assert_eq!(count_exact(&g).unwrap(), BigUint::one());
        assert_eq!(ryser(&g), BigUint::one());
    }
}
