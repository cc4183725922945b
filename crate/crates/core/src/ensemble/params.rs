use std::ops::Range;
use std::thread;

use crate::error::{Error, Result};
use crate::exactmath::choose;
use crate::graphcore::{pair_count, Edge, LabeledGraph};
use crate::reliability::{split_range, DEFAULT_SUBSET_EDGE_CAP};

use num_traits::ToPrimitive;

/// Default cap on the number of edge sets an exhaustive pass may visit.
pub const DEFAULT_EDGE_SET_CAP: u128 = 10_000_000;

/// The ensemble of simple graphs on `k` labeled vertices with `n` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnsembleParams {
    k: usize,
    n: usize,
}

impl EnsembleParams {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Validation(format!("vertex count k = {k} must be at least 2")));
        }
        let pairs = pair_count(k);
        if n == 0 || n > pairs {
            return Err(Error::Validation(format!("edge count n = {n} must lie in 1..={pairs} for k = {k}")));
        }
        Ok(EnsembleParams { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C(k, 2)`, the number of possible edges.
    pub fn pairs(&self) -> usize {
        pair_count(self.k)
    }

    /// Number of distinct edge sets, `C(C(k,2), n)`.
    pub fn edge_set_count(&self) -> u128 {
        choose(self.pairs() as u64, self.n as i64).to_u128().unwrap_or(u128::MAX)
    }

    /// All vertex pairs in lexicographic order; pair index `i` is bit `i` of
    /// an edge-set mask.
    pub fn pair_list(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.pairs());
        for a in 0..self.k {
            for b in a + 1..self.k {
                out.push(Edge::new(a, b));
            }
        }
        out
    }
}

/// Limits and parallelism for exhaustive ensemble passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub edge_set_cap: u128,
    pub subset_edge_cap: usize,
    pub workers: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            edge_set_cap: DEFAULT_EDGE_SET_CAP,
            subset_edge_cap: DEFAULT_SUBSET_EDGE_CAP,
            workers: 1,
        }
    }
}

impl EnumerationOptions {
    pub fn with_workers(workers: usize) -> Self {
        EnumerationOptions {
            workers,
            ..Default::default()
        }
    }
}

/// Mask of the edge set with colex rank `rank` among `n`-subsets.
fn unrank_colex(mut rank: u128, n: usize) -> u128 {
    let mut mask = 0u128;
    for i in (1..=n).rev() {
        // Largest c with C(c, i) <= rank.
        let mut c = i - 1;
        while choose_u128(c as u64 + 1, i as u64) <= rank {
            c += 1;
        }
        rank -= choose_u128(c as u64, i as u64);
        mask |= 1u128 << c;
    }
    mask
}

fn choose_u128(a: u64, b: u64) -> u128 {
    choose(a, b as i64).to_u128().unwrap_or(u128::MAX)
}

/// Next mask with the same popcount (Gosper's hack); increasing masks are
/// colex order.
fn next_combination(mask: u128) -> u128 {
    let lowest = mask & mask.wrapping_neg();
    let ripple = mask.wrapping_add(lowest);
    ripple | (((ripple ^ mask) >> 2) / lowest)
}

/// Visits every edge set of the ensemble in colex order, with the index
/// space split into contiguous ranges, one per worker. Each range starts
/// from `init()`; the per-range accumulators are returned in range order.
pub fn fold_edge_sets<T, I, V>(
    params: EnsembleParams,
    opts: &EnumerationOptions,
    init: I,
    visit: V,
) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &LabeledGraph) + Sync,
{
    let total = params.edge_set_count();
    if total > opts.edge_set_cap {
        return Err(Error::Capacity {
            what: "edge sets in the exhaustive ensemble enumeration",
            requested: total,
            cap: opts.edge_set_cap,
        });
    }
    if params.pairs() > 128 {
        return Err(Error::Capacity {
            what: "vertex pairs representable in an edge-set mask",
            requested: params.pairs() as u128,
            cap: 128,
        });
    }
    let pairs = params.pair_list();
    let run = |range: Range<u64>| {
        let mut acc = init();
        let mut mask = unrank_colex(range.start as u128, params.n);
        let mut edges = Vec::with_capacity(params.n);
        for idx in range.clone() {
            edges.clear();
            let mut bits = mask;
            while bits != 0 {
                edges.push(pairs[bits.trailing_zeros() as usize]);
                bits &= bits - 1;
            }
            let g = LabeledGraph::from_edges_unchecked(params.k, edges.clone());
            visit(&mut acc, &g);
            if idx + 1 < range.end {
                mask = next_combination(mask);
            }
        }
        acc
    };
    let ranges = split_range(total as u64, opts.workers);
    if ranges.len() == 1 {
        return Ok(vec![run(ranges[0].clone())]);
    }
    Ok(thread::scope(|s| {
        let handles: Vec<_> = ranges.into_iter().map(|r| s.spawn(|| run(r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(EnsembleParams::new(1, 1).is_err());
        assert!(EnsembleParams::new(3, 0).is_err());
        assert!(EnsembleParams::new(3, 4).is_err());
        let p = EnsembleParams::new(7, 12).unwrap();
        assert_eq!(p.pairs(), 21);
        assert_eq!(p.edge_set_count(), 293_930);
    }

    #[test]
    fn colex_unranking_matches_gosper() {
        let n = 3;
        let mut mask = 0b111u128;
        for rank in 0..120u128 {
            assert_eq!(unrank_colex(rank, n), mask, "rank {rank}");
            mask = next_combination(mask);
        }
    }

    #[test]
    fn visits_each_edge_set_once() {
        let p = EnsembleParams::new(5, 4).unwrap();
        for workers in [1, 3, 8] {
            let parts = fold_edge_sets(p, &EnumerationOptions::with_workers(workers), Vec::new, |acc, g| {
                acc.push(g.edges().to_vec())
            })
            .unwrap();
            let all: Vec<_> = parts.into_iter().flatten().collect();
            assert_eq!(all.len(), 210);
            let unique: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(unique.len(), 210);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = EnsembleParams::new(7, 12).unwrap();
        let opts = EnumerationOptions {
            edge_set_cap: 1000,
            ..Default::default()
        };
        let err = fold_edge_sets(p, &opts, || (), |_, _| {}).unwrap_err();
        assert!(matches!(err, Error::Capacity { requested: 293_930, cap: 1000, .. }));
    }
}
