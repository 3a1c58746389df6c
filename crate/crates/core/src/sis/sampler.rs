//! Sampler construction: picks the engine for a (graph, policy, rule) triple.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::band::{BandFixedEngine, Dist2StarEngine};
use super::driver::{Driver, Follow, Free};
use super::fib::{FibEngine, FibOrder, GreedyFib2Engine};
use super::generic::{GenericEngine, GenericOrder};
use super::policy::{star_rule_tables, ChoiceRule, OrderPolicy};
use super::trace::{DecisionTrace, Recorder, MAX_MOVE};
use crate::bipartite::band::BandDp;
use crate::bipartite::{BipartiteGraph, Family, Matching};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone)]
pub(crate) enum Engine {
    Fib(FibEngine),
    GreedyFib2(GreedyFib2Engine),
    Band(BandFixedEngine),
    Dist2Star(Dist2StarEngine),
    Generic(GenericEngine),
}

/// A configured sequential importance sampler.
#[derive(Debug, Clone)]
pub struct Sampler<'g> {
    pub(crate) g: &'g BipartiteGraph,
    pub(crate) policy: OrderPolicy,
    pub(crate) rule: ChoiceRule,
    pub(crate) engine: Engine,
}

fn unsupported(g: &BipartiteGraph, policy: &OrderPolicy, rule: ChoiceRule) -> Error {
    Error::Unsupported(format!("order {policy} with rule {rule} on {} graphs", g.family_tag()))
}

impl<'g> Sampler<'g> {
    pub fn new(g: &'g BipartiteGraph, policy: OrderPolicy, rule: ChoiceRule) -> Result<Self> {
        Self::with_limits(g, policy, rule, &Limits::default())
    }

    pub fn with_limits(g: &'g BipartiteGraph, policy: OrderPolicy, rule: ChoiceRule, limits: &Limits) -> Result<Self> {
        let n = g.n();
        let fam = g.family_tag();
        let tables = star_rule_tables();
        let bad = || unsupported(g, &policy, rule);
        let fib_t = match fam {
            Family::Fibonacci(t) if t < MAX_MOVE => Some(t),
            _ => None,
        };
        if let OrderPolicy::Explicit(seq) = &policy {
            let mut seen = vec![false; n];
            if seq.len() != n || seq.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidParameter("explicit order must be a permutation of 1..n".into()));
            }
        }
        let fib = |order: FibOrder, t: usize, tuned: Option<Vec<f64>>| Engine::Fib(FibEngine { n, t, order, tuned });
        let engine = match (&policy, rule) {
            (OrderPolicy::GreedyFib1, ChoiceRule::Uniform | ChoiceRule::FibStarGreedy) if fib_t == Some(1) => {
                let tuned = (rule == ChoiceRule::FibStarGreedy).then(|| tables.fib_greedy.to_vec());
                fib(FibOrder::Greedy, 1, tuned)
            }
            (OrderPolicy::GreedyCycleFib2, ChoiceRule::Uniform) if fib_t == Some(2) => {
                Engine::GreedyFib2(GreedyFib2Engine { n })
            }
            (OrderPolicy::RandomCycle, ChoiceRule::Uniform) => match fib_t {
                Some(t) => fib(FibOrder::Random, t, None),
                None => return Err(bad()),
            },
            (OrderPolicy::FixedTopDown, ChoiceRule::FibStarFixed) if fib_t == Some(1) => {
                fib(FibOrder::Fixed, 1, Some(tables.fib_fixed.to_vec()))
            }
            (OrderPolicy::FixedTopDown, ChoiceRule::Fib2StarFixed) if fib_t == Some(2) => {
                fib(FibOrder::Fixed, 2, Some(tables.fib2_fixed.to_vec()))
            }
            (OrderPolicy::FixedTopDown, ChoiceRule::Dist2StarFixed) if fam == Family::Distance(2) => {
                Engine::Dist2Star(Dist2StarEngine {
                    dp: BandDp::new(g, limits)?,
                    case1: tables.dist2_case1,
                    case2: tables.dist2_case2,
                })
            }
            (OrderPolicy::FixedTopDown, ChoiceRule::Uniform) => match fib_t {
                Some(t) => fib(FibOrder::Fixed, t, None),
                None => match BandDp::new(g, limits) {
                    Ok(dp) => Engine::Band(BandFixedEngine { dp }),
                    Err(Error::UnsupportedWidth { .. }) => Engine::Generic(GenericEngine { order: GenericOrder::Fixed }),
                    Err(e) => return Err(e),
                },
            },
            (OrderPolicy::UniformRandom, ChoiceRule::Uniform) => {
                if fib_t == Some(1) {
                    fib(FibOrder::Random, 1, None)
                } else {
                    Engine::Generic(GenericEngine { order: GenericOrder::Random })
                }
            }
            (OrderPolicy::Explicit(seq), ChoiceRule::Uniform) => {
                if fib_t == Some(1) {
                    fib(FibOrder::Explicit(seq.clone()), 1, None)
                } else {
                    Engine::Generic(GenericEngine { order: GenericOrder::Explicit(seq.clone()) })
                }
            }
            _ => return Err(bad()),
        };
        Ok(Sampler { g, policy, rule, engine })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        self.g
    }

    pub fn policy(&self) -> &OrderPolicy {
        &self.policy
    }

    pub fn rule(&self) -> ChoiceRule {
        self.rule
    }

    pub(crate) fn run<D: Driver>(&self, d: &mut D, rec: &mut Recorder) -> Result<Vec<usize>> {
        match &self.engine {
            Engine::Fib(e) => e.run(d, rec),
            Engine::GreedyFib2(e) => e.run(d, rec),
            Engine::Band(e) => e.run(self.g, d, rec),
            Engine::Dist2Star(e) => e.run(self.g, d, rec),
            Engine::Generic(e) => e.run(self.g, d, rec),
        }
    }

    /// Draws a matching with its full decision trace.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> DecisionTrace {
        let mut rec = Recorder::new(true);
        let pi = self.run(&mut Free(rng), &mut rec).expect("free sampling cannot fail");
        DecisionTrace { matching: Matching::new(pi), steps: rec.steps, log_t: rec.log_t }
    }

    /// log T of a fresh sample, without keeping the step log.
    pub fn sample_log_weight<R: Rng>(&self, rng: &mut R) -> f64 {
        let mut rec = Recorder::new(false);
        self.run(&mut Free(rng), &mut rec).expect("free sampling cannot fail");
        rec.log_t
    }

    /// Sample returning the matching and log T.
    pub fn sample_matching<R: Rng>(&self, rng: &mut R) -> (Matching, f64) {
        let mut rec = Recorder::new(false);
        let pi = self.run(&mut Free(rng), &mut rec).expect("free sampling cannot fail");
        (Matching::new(pi), rec.log_t)
    }

    /// Runs the sampler forced along `m`; the order (if random) is drawn from `rng`.
    pub fn trace_for_matching<R: Rng>(&self, m: &Matching, rng: &mut R) -> Result<DecisionTrace> {
        m.validate(self.g)?;
        let mut rec = Recorder::new(true);
        let pi = self.run(&mut Follow { pi: &m.pi, rng }, &mut rec)?;
        debug_assert_eq!(pi, m.pi);
        Ok(DecisionTrace { matching: m.clone(), steps: rec.steps, log_t: rec.log_t })
    }

    /// log T along `m` for one drawn order.
    pub fn log_weight_for_matching<R: Rng>(&self, m: &Matching, rng: &mut R) -> Result<f64> {
        let mut rec = Recorder::new(false);
        self.run(&mut Follow { pi: &m.pi, rng }, &mut rec)?;
        Ok(rec.log_t)
    }

    /// Trace along `m` for deterministic orders (no rng needed).
    pub fn deterministic_trace(&self, m: &Matching) -> Result<DecisionTrace> {
        if !self.policy.is_deterministic() {
            return Err(Error::Unsupported("order is random; use trace_for_matching".into()));
        }
        self.trace_for_matching(m, &mut ChaCha8Rng::seed_from_u64(0))
    }
}

/// One-shot sampling.
pub fn sample<R: Rng>(g: &BipartiteGraph, policy: OrderPolicy, rule: ChoiceRule, rng: &mut R) -> Result<DecisionTrace> {
    Ok(Sampler::new(g, policy, rule)?.sample(rng))
}
