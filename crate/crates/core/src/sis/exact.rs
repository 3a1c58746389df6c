//! Exact path probabilities and order averages.
//!
//! For deterministic orders the path of a matching is unique and its value
//! is a product over steps. For random orders on Fibonacci graphs the blocks
//! of pi are matched independently in disjoint intervals, which gives an
//! interval recursion; other random orders use a recursion over the set of
//! already assigned lefts.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::fib::cycle_options;
use super::fib::FibState;
use super::sampler::{Engine, Sampler};
use super::fib::FibOrder;
use super::generic::GenericOrder;
use super::trace::StepProb;
use crate::bipartite::{BipartiteGraph, Matching, Partial, Residual};
use crate::error::{Error, Result};
use crate::scalar::Probability;

/// Values that can be accumulated along sampler paths.
pub trait PathValue: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {
    /// A uniform step among c options.
    fn uniform_step(c: u64) -> Self;
    /// A tuned step taken with probability p.
    fn tuned_step(p: f64) -> Result<Self>;
    /// Weight of drawing one of `len` indices uniformly.
    fn inv_len(len: u64) -> Self;
}

impl<P: Probability> PathValue for P {
    fn uniform_step(c: u64) -> Self {
        P::reciprocal_count(c)
    }
    fn tuned_step(p: f64) -> Result<Self> {
        P::from_real(p)
    }
    fn inv_len(len: u64) -> Self {
        P::reciprocal_count(len)
    }
}

/// A probability held as its natural log; addition is log-sum-exp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogProb(pub f64);

impl Add for LogProb {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = if self.0 >= o.0 { (self.0, o.0) } else { (o.0, self.0) };
        if b == f64::NEG_INFINITY {
            return LogProb(a);
        }
        LogProb(a + (b - a).exp().ln_1p())
    }
}

impl Mul for LogProb {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        LogProb(self.0 + o.0)
    }
}

impl Zero for LogProb {
    fn zero() -> Self {
        LogProb(f64::NEG_INFINITY)
    }
    fn is_zero(&self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

impl One for LogProb {
    fn one() -> Self {
        LogProb(0.0)
    }
}

impl PathValue for LogProb {
    fn uniform_step(c: u64) -> Self {
        LogProb(-(c as f64).ln())
    }
    fn tuned_step(p: f64) -> Result<Self> {
        Ok(LogProb(p.ln()))
    }
    fn inv_len(len: u64) -> Self {
        LogProb(-(len as f64).ln())
    }
}

/// Largest n for the subset recursion of generic random orders.
pub const SUBSET_MAX_N: usize = 16;

impl Sampler<'_> {
    /// Sum over orders of P(order) * prod over steps of the step values.
    /// With probability-valued steps this is the exact P(pi).
    pub fn path_value<V: PathValue>(&self, m: &Matching) -> Result<V> {
        m.validate(self.g)?;
        match &self.engine {
            Engine::Fib(e) if matches!(e.order, FibOrder::Random) => interval_recursion(&m.pi, e.t),
            Engine::Generic(e) if matches!(e.order, GenericOrder::Random) => subset_recursion(self.g, &m.pi),
            _ => {
                let tr = self.deterministic_trace(m)?;
                let mut v = V::one();
                for s in &tr.steps {
                    v = v * match s.prob {
                        StepProb::Uniform(c) => V::uniform_step(c),
                        StepProb::Tuned(p) => V::tuned_step(p)?,
                    };
                }
                Ok(v)
            }
        }
    }

    /// Exact P(pi); rational types require the uniform rule.
    pub fn path_probability<P: Probability>(&self, m: &Matching) -> Result<P> {
        self.path_value::<P>(m)
    }

    /// log P(pi).
    pub fn log_path_probability(&self, m: &Matching) -> Result<f64> {
        Ok(self.path_value::<LogProb>(m)?.0)
    }
}

/// Exact P(pi) for a one-shot (graph, policy, rule).
pub fn path_probability<P: Probability>(
    g: &BipartiteGraph,
    policy: super::OrderPolicy,
    rule: super::ChoiceRule,
    m: &Matching,
) -> Result<P> {
    Sampler::new(g, policy, rule)?.path_probability(m)
}

/// Blocks of a Fibonacci permutation as (a, b), or an error if pi is not one.
pub fn fib_blocks(pi: &[usize], t: usize) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut a = 0;
    while a < pi.len() {
        let b = pi[a];
        if b < a || b - a > t || (a + 1..=b).any(|k| pi.get(k) != Some(&(k - 1))) {
            return Err(Error::NotAMatching("not a block permutation of the Fibonacci family".into()));
        }
        out.push((a, b));
        a = b + 1;
    }
    Ok(out)
}

/// P_[p..q] over block ranges, bottom-up:
/// P = (1/len) sum_i step(c_i) P_left P_right.
fn interval_recursion<V: PathValue>(pi: &[usize], t: usize) -> Result<V> {
    let blocks = fib_blocks(pi, t)?;
    let m = blocks.len();
    if m == 0 {
        return Ok(V::one());
    }
    let mut block_of = vec![0; pi.len()];
    for (k, &(a, b)) in blocks.iter().enumerate() {
        block_of[a..=b].iter_mut().for_each(|x| *x = k);
    }
    // memo[p][q - p] for p <= q
    let mut memo: Vec<Vec<V>> = vec![Vec::new(); m];
    let get = |memo: &Vec<Vec<V>>, p: usize, q: isize| -> V {
        if q < p as isize {
            V::one()
        } else {
            memo[p][q as usize - p].clone()
        }
    };
    for width in 0..m {
        for p in 0..m - width {
            let q = p + width;
            let (a, _) = blocks[p];
            let (_, b) = blocks[q];
            let mut st = FibState::new(pi.len());
            for k in (0..a).chain(b + 1..pi.len()) {
                st.pi[k] = pi[k];
            }
            let mut acc = V::zero();
            for i in a..=b {
                let c = cycle_options(&st, t, i).len() as u64;
                let k = block_of[i];
                acc = acc + V::uniform_step(c) * get(&memo, p, k as isize - 1) * get(&memo, k + 1, q as isize);
            }
            let v = V::inv_len((b - a + 1) as u64) * acc;
            memo[p].push(v);
        }
    }
    Ok(memo[0][m - 1].clone())
}

/// P(S) over assigned sets S (bitmask), with the assignments of S taken from pi.
fn subset_recursion<V: PathValue>(g: &BipartiteGraph, pi: &[usize]) -> Result<V> {
    let n = g.n();
    if n > SUBSET_MAX_N {
        return Err(Error::LimitExceeded {
            what: "random-order exact recursion n",
            value: n.to_string(),
            limit: SUBSET_MAX_N as u64,
        });
    }
    let full: u32 = if n == 0 { 0 } else { ((1u64 << n) - 1) as u32 };
    let mut memo: HashMap<u32, V> = HashMap::new();
    memo.insert(full, V::one());
    // sets by decreasing size so supersets are ready
    let mut sets: Vec<u32> = (0..=full).collect();
    sets.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    for s in sets {
        if s == full {
            continue;
        }
        let mut partial = Partial::empty(n);
        for i in 0..n {
            if s & (1 << i) != 0 {
                partial.assign[i] = Some(pi[i]);
            }
        }
        let res = Residual::new(g, &partial);
        let free = n - s.count_ones() as usize;
        let mut acc = V::zero();
        for i in 0..n {
            if s & (1 << i) != 0 {
                continue;
            }
            let c = res.options(i).len() as u64;
            acc = acc + V::uniform_step(c) * memo[&(s | (1 << i))].clone();
        }
        memo.insert(s, V::inv_len(free as u64) * acc);
    }
    Ok(memo.remove(&0).expect("computed"))
}

#[cfg(test)]
mod tests {
    use super::super::driver::Driver;
    use super::super::trace::{Move, Recorder};
    use super::super::{ChoiceRule, OrderPolicy};
    use super::*;
    use crate::bipartite::{enumerate_matchings, Family};

    /// Replays a prefix of index picks, then always picks 0 and records the
    /// branching factors so every order can be enumerated.
    struct Scripted<'a> {
        pi: &'a [usize],
        prefix: Vec<usize>,
        pos: usize,
        lens: Vec<usize>,
    }

    impl Driver for Scripted<'_> {
        fn pick_index(&mut self, len: usize) -> usize {
            self.lens.push(len);
            let c = self.prefix.get(self.pos).copied().unwrap_or(0);
            self.pos += 1;
            c
        }
        fn pick_move(&mut self, menu: &[Move], _: Option<&[f64]>) -> Result<usize> {
            Ok(menu.iter().position(|m| m.agrees_with(self.pi)).expect("reachable"))
        }
    }

    /// Sum over all orders of P(order) * prod 1/c.
    fn exhaust(s: &Sampler, pi: &[usize]) -> f64 {
        let mut stack = vec![Vec::new()];
        let mut total = 0.0;
        while let Some(prefix) = stack.pop() {
            let start = prefix.len();
            let mut d = Scripted { pi, prefix: prefix.clone(), pos: 0, lens: Vec::new() };
            let mut rec = Recorder::new(false);
            s.run(&mut d, &mut rec).unwrap();
            let p_order: f64 = d.lens.iter().map(|&l| 1.0 / l as f64).product();
            total += p_order * (-rec.log_t).exp();
            for k in start..d.lens.len() {
                for c in 1..d.lens[k] {
                    let mut next: Vec<usize> = prefix.clone();
                    next.extend(std::iter::repeat_n(0, k - start));
                    next.push(c);
                    stack.push(next);
                }
            }
        }
        total
    }

    #[test]
    fn order_average_matches_recursion() {
        let cases = [
            (Family::Fibonacci(1), OrderPolicy::UniformRandom, 6),
            (Family::Fibonacci(2), OrderPolicy::RandomCycle, 6),
            (Family::Fibonacci(2), OrderPolicy::UniformRandom, 5),
            (Family::Distance(2), OrderPolicy::UniformRandom, 5),
        ];
        for (fam, pol, n) in cases {
            let g = BipartiteGraph::family(fam, n).unwrap();
            let s = Sampler::new(&g, pol.clone(), ChoiceRule::Uniform).unwrap();
            for m in enumerate_matchings(&g).unwrap() {
                let want: f64 = s.path_probability(&m).unwrap();
                let got = exhaust(&s, &m.pi);
                assert!((want - got).abs() < 1e-12, "{fam} {pol} {m}: {want} vs {got}");
            }
        }
    }

    #[test]
    fn log_prob_semiring() {
        let a = LogProb(0.5f64.ln()) + LogProb(0.25f64.ln());
        assert!((a.0.exp() - 0.75).abs() < 1e-15);
        assert_eq!(LogProb::zero() + LogProb(-1.0), LogProb(-1.0));
    }
}
