//! Step records and the line-oriented trace format.

use std::fmt;

use serde::Serialize;

use crate::bipartite::Matching;

/// Most assignments made by a single move (block size limit of the engines).
pub const MAX_MOVE: usize = 5;

/// A move assigns a small set of lefts at once: a single edge, a whole
/// block of a Fibonacci permutation, or a forced group.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Move {
    len: u8,
    pairs: [(u32, u32); MAX_MOVE],
}

impl Move {
    pub fn single(i: usize, j: usize) -> Self {
        Self::from_pairs(&[(i, j)])
    }

    pub fn from_pairs(p: &[(usize, usize)]) -> Self {
        assert!(p.len() <= MAX_MOVE, "move too large");
        let mut pairs = [(0u32, 0u32); MAX_MOVE];
        for (k, &(i, j)) in p.iter().enumerate() {
            pairs[k] = (i as u32, j as u32);
        }
        Move { len: p.len() as u8, pairs }
    }

    /// Block [a, b] of a Fibonacci permutation: a -> b, k -> k - 1.
    pub fn block(a: usize, b: usize) -> Self {
        let mut m = Move { len: 0, pairs: [(0, 0); MAX_MOVE] };
        m.push(a, b);
        for k in a + 1..=b {
            m.push(k, k - 1);
        }
        m
    }

    /// The same move shifted right by s.
    pub fn shifted(&self, s: usize) -> Self {
        let mut m = *self;
        for p in &mut m.pairs[..self.len as usize] {
            p.0 += s as u32;
            p.1 += s as u32;
        }
        m
    }

    fn push(&mut self, i: usize, j: usize) {
        self.pairs[self.len as usize] = (i as u32, j as u32);
        self.len += 1;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs[..self.len as usize].iter().map(|&(i, j)| (i as usize, j as usize))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn agrees_with(&self, pi: &[usize]) -> bool {
        self.pairs().all(|(i, j)| pi.get(i) == Some(&j))
    }
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Move {
    /// 1-based "i->j" pairs joined by commas.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.pairs().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}->{}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// Probability used at a step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum StepProb {
    /// 1 / count
    Uniform(u64),
    Tuned(f64),
}

impl StepProb {
    pub fn value(&self) -> f64 {
        match *self {
            StepProb::Uniform(c) => 1.0 / c as f64,
            StepProb::Tuned(p) => p,
        }
    }

    /// -log p
    pub fn neg_log(&self) -> f64 {
        match *self {
            StepProb::Uniform(c) => (c as f64).ln(),
            StepProb::Tuned(p) => -p.ln(),
        }
    }
}

impl fmt::Display for StepProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StepProb::Uniform(c) => write!(f, "1/{c}"),
            StepProb::Tuned(p) => f.write_str(&fmt17(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    /// Left index the step was taken at (0-based).
    pub pivot: usize,
    pub menu: Vec<Move>,
    pub chosen: usize,
    pub prob: StepProb,
}

impl Step {
    pub fn chosen_move(&self) -> &Move {
        &self.menu[self.chosen]
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={} options={{", self.pivot + 1)?;
        for (k, m) in self.menu.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}} chose={} p={}", self.chosen_move(), self.prob)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTrace {
    pub matching: Matching,
    pub steps: Vec<Step>,
    /// -sum log p over the steps, in nats.
    pub log_t: f64,
}

impl DecisionTrace {
    /// Exact T when every step is uniform: the product of option counts.
    pub fn uniform_weight(&self) -> Option<num_bigint::BigUint> {
        let mut t = num_bigint::BigUint::from(1u32);
        for s in &self.steps {
            match s.prob {
                StepProb::Uniform(c) => t *= c,
                StepProb::Tuned(_) => return None,
            }
        }
        Some(t)
    }
}

impl fmt::Display for DecisionTrace {
    /// Permutation line, logT line, then one line per step.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.matching)?;
        writeln!(f, "{}", fmt17(self.log_t))?;
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {}: {}", k + 1, s)?;
        }
        Ok(())
    }
}

/// Accumulates log T and, optionally, the step log.
#[derive(Debug)]
pub(crate) struct Recorder {
    full: bool,
    pub log_t: f64,
    pub steps: Vec<Step>,
}

impl Recorder {
    pub fn new(full: bool) -> Self {
        Recorder { full, log_t: 0.0, steps: Vec::new() }
    }

    pub fn record(&mut self, pivot: usize, menu: &[Move], chosen: usize, prob: StepProb) {
        self.log_t += prob.neg_log();
        if self.full {
            self.steps.push(Step { pivot, menu: menu.to_vec(), chosen, prob });
        }
    }
}

/// Real number with 17 significant digits; plain notation for moderate
/// magnitudes, scientific otherwise.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..17).contains(&e) {
        let prec = (16 - e).max(0) as usize;
        format!("{x:.prec$}")
    } else {
        format!("{x:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_moves() {
        let m = Move::block(1, 3);
        assert_eq!(m.to_string(), "2->4,3->2,4->3");
        assert!(m.agrees_with(&[0, 3, 1, 2]));
        assert_eq!(Move::block(2, 2).shifted(1).to_string(), "4->4");
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(std::f64::consts::LN_2), "0.69314718055994529");
        assert_eq!(fmt17(2.0), "2.0000000000000000");
        assert_eq!(fmt17(1234.5), "1234.5000000000000");
        assert!(fmt17(1e-9).contains('e'));
    }
}
