//! Choice drivers: a free sampler draws moves from the rng; a follower
//! replays a given matching (the order, if random, is still drawn).

use rand::Rng;

use super::trace::{Move, Recorder, StepProb};
use crate::error::{Error, Result};

pub(crate) trait Driver {
    /// Uniform index in 0..len.
    fn pick_index(&mut self, len: usize) -> usize;
    /// Chooses a menu entry; `probs` None means uniform.
    fn pick_move(&mut self, menu: &[Move], probs: Option<&[f64]>) -> Result<usize>;
}

pub(crate) struct Free<'r, R: Rng>(pub &'r mut R);

impl<R: Rng> Driver for Free<'_, R> {
    fn pick_index(&mut self, len: usize) -> usize {
        self.0.random_range(0..len)
    }

    fn pick_move(&mut self, menu: &[Move], probs: Option<&[f64]>) -> Result<usize> {
        if menu.len() == 1 {
            return Ok(0);
        }
        match probs {
            None => Ok(self.0.random_range(0..menu.len())),
            Some(p) => {
                let u: f64 = self.0.random();
                let mut acc = 0.0;
                for (k, &v) in p.iter().enumerate() {
                    acc += v;
                    if u < acc {
                        return Ok(k);
                    }
                }
                Ok(p.len() - 1)
            }
        }
    }
}

pub(crate) struct Follow<'a, 'r, R: Rng> {
    pub pi: &'a [usize],
    pub rng: &'r mut R,
}

impl<R: Rng> Driver for Follow<'_, '_, R> {
    fn pick_index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    fn pick_move(&mut self, menu: &[Move], _probs: Option<&[f64]>) -> Result<usize> {
        menu.iter()
            .position(|m| m.agrees_with(self.pi))
            .ok_or_else(|| Error::NotAMatching("matching is not reachable by this sampler".into()))
    }
}

/// Picks from `menu` and records the step.
pub(crate) fn take<D: Driver>(
    d: &mut D,
    rec: &mut Recorder,
    pivot: usize,
    menu: &[Move],
    probs: Option<&[f64]>,
) -> Result<Move> {
    debug_assert!(!menu.is_empty());
    let k = d.pick_move(menu, probs)?;
    let prob = match probs {
        Some(p) if menu.len() > 1 => StepProb::Tuned(p[k]),
        _ => StepProb::Uniform(menu.len() as u64),
    };
    rec.record(pivot, menu, k, prob);
    Ok(menu[k])
}
