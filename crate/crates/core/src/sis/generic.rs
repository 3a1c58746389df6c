//! Per-vertex engine on arbitrary graphs with feasibility-checked options.

use super::driver::{take, Driver};
use super::fib::NONE;
use super::trace::{Move, Recorder};
use crate::bipartite::{BipartiteGraph, Partial, Residual};
use crate::error::Result;

#[derive(Debug, Clone)]
pub(crate) enum GenericOrder {
    Fixed,
    Random,
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone)]
pub(crate) struct GenericEngine {
    pub order: GenericOrder,
}

impl GenericEngine {
    pub fn run<D: Driver>(&self, g: &BipartiteGraph, d: &mut D, rec: &mut Recorder) -> Result<Vec<usize>> {
        let n = g.n();
        let mut res = Residual::new(g, &Partial::empty(n));
        let mut pi = vec![NONE; n];
        let mut menu = Vec::new();
        let mut visit = |i: usize, res: &mut Residual, d: &mut D, rec: &mut Recorder| -> Result<()> {
            menu.clear();
            menu.extend(res.options(i).into_iter().map(|j| Move::single(i, j)));
            let m = take(d, rec, i, &menu, None)?;
            let (_, j) = m.pairs().next().expect("single");
            let ok = res.assign(i, j);
            debug_assert!(ok);
            pi[i] = j;
            Ok(())
        };
        match &self.order {
            GenericOrder::Fixed => {
                for i in 0..n {
                    visit(i, &mut res, d, rec)?;
                }
            }
            GenericOrder::Explicit(seq) => {
                for &i in seq {
                    visit(i, &mut res, d, rec)?;
                }
            }
            GenericOrder::Random => {
                let mut und: Vec<usize> = (0..n).collect();
                while !und.is_empty() {
                    let k = d.pick_index(und.len());
                    let i = und.swap_remove(k);
                    visit(i, &mut res, d, rec)?;
                }
            }
        }
        Ok(pi)
    }
}
