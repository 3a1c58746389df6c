//! Allowable options I_i: unused neighbors of i that keep a completion possible.

use super::band::{BandDp, Window};
use super::feasibility::{full_has_completion, Partial, Residual};
use super::graph::{BipartiteGraph, Family};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Does the residual graph of `partial` have a perfect matching?
pub fn has_completion(g: &BipartiteGraph, partial: &Partial) -> Result<bool> {
    partial.validate(g)?;
    Ok(Residual::new(g, partial).feasible())
}

/// Same question answered by a from-scratch maximum matching.
pub fn has_completion_full(g: &BipartiteGraph, partial: &Partial) -> Result<bool> {
    partial.validate(g)?;
    Ok(full_has_completion(g, partial))
}

/// Which path answered an options query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptionsPath {
    Interval,
    BandPrefix,
    Generic,
}

/// Allowable options of unassigned left i, ascending. Uses a structural
/// rule where one applies and the generic feasibility check otherwise.
pub fn allowable_options(g: &BipartiteGraph, partial: &Partial, i: usize) -> Result<Vec<usize>> {
    allowable_options_traced(g, partial, i).map(|(v, _)| v)
}

pub fn allowable_options_traced(
    g: &BipartiteGraph,
    partial: &Partial,
    i: usize,
) -> Result<(Vec<usize>, OptionsPath)> {
    partial.validate(g)?;
    if i >= g.n() || partial.assign[i].is_some() {
        return Err(Error::InvalidParameter(format!("left {} is not unassigned", i + 1)));
    }
    if let Family::Fibonacci(t) = g.family_tag() {
        if let Some(v) = fib_interval_options(g.n(), t, partial, i) {
            return Ok((v, OptionsPath::Interval));
        }
    }
    if g.family_tag() != Family::Custom && is_prefix(partial, i) {
        let limits = Limits::default();
        if let Ok(dp) = BandDp::new(g, &limits) {
            let used = partial.used_rights(g.n());
            let v = match dp.win.mask_from_used(i, &used) {
                Some(mask) if dp.is_live(i, mask) => dp.options(g, i, mask),
                _ => Vec::new(),
            };
            return Ok((v, OptionsPath::BandPrefix));
        }
    }
    Ok((generic_options(g, partial, i), OptionsPath::Generic))
}

/// Feasibility-checked options through the incremental residual matching.
pub fn generic_options(g: &BipartiteGraph, partial: &Partial, i: usize) -> Vec<usize> {
    Residual::new(g, partial).options(i)
}

/// Lefts before i assigned, i and later unassigned.
fn is_prefix(partial: &Partial, i: usize) -> bool {
    partial.assign[..i].iter().all(Option::is_some) && partial.assign[i..].iter().all(Option::is_none)
}

/// Interval rule on F_{n,t}. Applies when the partial is a union of closed
/// blocks (unassigned lefts and unused rights coincide); the residual is then
/// a disjoint union of smaller F_{m,t} on maximal free runs [a, b], and left
/// i may take any j in [max(a, i-1), min(b, i+t)].
pub fn fib_interval_options(n: usize, t: usize, partial: &Partial, i: usize) -> Option<Vec<usize>> {
    let used = partial.used_rights(n);
    if (0..n).any(|k| partial.assign[k].is_none() == used[k]) {
        return None;
    }
    let mut a = i;
    while a > 0 && partial.assign[a - 1].is_none() {
        a -= 1;
    }
    let mut b = i;
    while b + 1 < n && partial.assign[b + 1].is_none() {
        b += 1;
    }
    let lo = a.max(i.saturating_sub(1));
    let hi = b.min(i + t);
    Some((lo..=hi).collect())
}

/// Window helper re-exported for engines.
pub fn window(g: &BipartiteGraph) -> Result<Window> {
    Window::of(g, &Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib(n: usize) -> BipartiteGraph {
        BipartiteGraph::family(Family::Fibonacci(1), n).unwrap()
    }

    #[test]
    fn fresh_fib_options() {
        let g = fib(4);
        let p = Partial::empty(4);
        assert_eq!(allowable_options(&g, &p, 0).unwrap(), vec![0, 1]);
        assert_eq!(allowable_options(&g, &p, 1).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn dist2_center_options() {
        let g = BipartiteGraph::family(Family::Distance(2), 5).unwrap();
        let p = Partial::empty(5);
        let (v, path) = allowable_options_traced(&g, &p, 2).unwrap();
        assert_eq!(v, vec![0, 1, 2, 3, 4]);
        assert_eq!(path, OptionsPath::Generic);
        assert_eq!(v, super::super::feasibility::full_options(&g, &p, 2));
    }

    #[test]
    fn completion_examples() {
        let g = fib(4);
        assert!(has_completion(&g, &Partial::from_pairs_one_based(4, &[(1, 2)])).unwrap());
        // 1 -> 1, 3 -> 2 still completes to 1324
        assert!(has_completion(&g, &Partial::from_pairs_one_based(4, &[(1, 1), (3, 2)])).unwrap());
        assert!(!has_completion(&g, &Partial::from_pairs_one_based(4, &[(1, 2), (2, 3)])).unwrap());
        assert!(!has_completion_full(&g, &Partial::from_pairs_one_based(4, &[(1, 2), (2, 3)])).unwrap());
    }

    #[test]
    fn assigned_index_rejected() {
        let g = fib(3);
        let p = Partial::from_pairs_one_based(3, &[(1, 1)]);
        assert!(allowable_options(&g, &p, 0).is_err());
    }
}
