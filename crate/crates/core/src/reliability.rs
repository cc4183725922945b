//! Exact network failure probability `P_f(G, ε)`: the probability that the
//! survivor subgraph is unconnected when every edge fails independently
//! with probability ε (and 1 when `G` itself is unconnected).
//!
//! Two independent routes are provided: counting disconnecting failure
//! subsets ([`failure_profile_enum`]) and pivotal decomposition
//! ([`failure_profile_pivotal`]).

use std::thread;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::exactmath::{choose_u64, EpsPolynomial, Rational};
use crate::graphcore::LabeledGraph;

/// Default cap on `n` for the `2^n` failure-subset enumeration.
pub const DEFAULT_SUBSET_EDGE_CAP: usize = 24;

/// Disconnecting-subset counts of a graph and its failure polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureProfile {
    /// `counts[j]` = number of size-`j` failure sets leaving `G` unconnected.
    pub counts: Vec<u64>,
    pub polynomial: EpsPolynomial,
}

impl FailureProfile {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let polynomial = counts_to_polynomial(&counts);
        FailureProfile { counts, polynomial }
    }

    pub fn edge_count(&self) -> usize {
        self.counts.len() - 1
    }
}

/// `Σ_j N_j ε^j (1−ε)^{n−j}` expanded into the monomial basis.
pub fn counts_to_polynomial(counts: &[u64]) -> EpsPolynomial {
    weighted_counts_to_polynomial(&counts.iter().map(|&c| Rational::from_integer(c)).collect::<Vec<_>>())
}

/// Same as [`counts_to_polynomial`] for rational (e.g. averaged) counts.
pub fn weighted_counts_to_polynomial(counts: &[Rational]) -> EpsPolynomial {
    let n = counts.len() - 1;
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(EpsPolynomial::zero(), |acc, (j, c)| {
            &acc + &EpsPolynomial::bernstein(j, n - j).scale(c)
        })
}

/// Reusable subset enumerator for one graph shape.
///
/// Survivor masks with fewer than `k − 1` edges are counted without a
/// connectivity test, since no forest that small spans `k` vertices.
pub(crate) struct SubsetCounter {
    k: usize,
    dsu: DisjointSets,
}

impl SubsetCounter {
    pub(crate) fn new(k: usize) -> Self {
        SubsetCounter {
            k,
            dsu: DisjointSets::new(k),
        }
    }

    /// Adds the disconnecting counts for survivor masks in `range` to `counts`.
    /// `edges` are 0-based endpoints; `counts` has length `n + 1`.
    pub(crate) fn tally(&mut self, edges: &[(usize, usize)], range: std::ops::Range<u64>, counts: &mut [u64]) {
        let n = edges.len();
        let need = self.k as u32 - 1;
        for survivors in range {
            let alive = survivors.count_ones();
            let failed = n - alive as usize;
            if alive < need || !self.spans(edges, survivors) {
                counts[failed] += 1;
            }
        }
    }

    fn spans(&mut self, edges: &[(usize, usize)], mut survivors: u64) -> bool {
        self.dsu.reset();
        while survivors != 0 {
            let j = survivors.trailing_zeros() as usize;
            survivors &= survivors - 1;
            let (a, b) = edges[j];
            if self.dsu.union(a, b) && self.dsu.components() == 1 {
                return true;
            }
        }
        false
    }
}

pub(crate) fn check_subset_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(63) {
        return Err(Error::Capacity {
            what: "edge count for the 2^n failure-subset enumeration",
            requested: n as u128,
            cap: cap.min(63) as u128,
        });
    }
    Ok(())
}

/// Disconnecting counts of a graph, assumed within the subset cap.
pub(crate) fn disconnecting_counts(g: &LabeledGraph, counter: &mut SubsetCounter) -> Vec<u64> {
    let n = g.edge_count();
    if !g.is_connected() {
        return (0..=n as u64).map(|j| choose_u64(n as u64, j)).collect();
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo, e.hi)).collect();
    let mut counts = vec![0u64; n + 1];
    counter.tally(&edges, 0..1u64 << n, &mut counts);
    counts
}

pub fn failure_profile_enum(g: &LabeledGraph) -> Result<FailureProfile> {
    failure_profile_enum_with(g, DEFAULT_SUBSET_EDGE_CAP, 1)
}

/// Enumerates all `2^n` failure subsets, split into `workers` contiguous
/// index ranges whose tallies are summed.
pub fn failure_profile_enum_with(g: &LabeledGraph, edge_cap: usize, workers: usize) -> Result<FailureProfile> {
    let n = g.edge_count();
    check_subset_cap(n, edge_cap)?;
    let k = g.vertex_count();
    if workers <= 1 || !g.is_connected() {
        return Ok(FailureProfile::from_counts(disconnecting_counts(g, &mut SubsetCounter::new(k))));
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo, e.hi)).collect();
    let total = 1u64 << n;
    let ranges = split_range(total, workers);
    let partials: Vec<Vec<u64>> = thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| {
                let edges = &edges;
                s.spawn(move || {
                    let mut counts = vec![0u64; n + 1];
                    SubsetCounter::new(k).tally(edges, range, &mut counts);
                    counts
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut counts = vec![0u64; n + 1];
    for part in partials {
        for (dst, src) in counts.iter_mut().zip(part) {
            *dst += src;
        }
    }
    Ok(FailureProfile::from_counts(counts))
}

/// Splits `0..total` into at most `workers` contiguous nonempty ranges.
pub(crate) fn split_range(total: u64, workers: usize) -> Vec<std::ops::Range<u64>> {
    let workers = (workers.max(1) as u64).min(total.max(1));
    let chunk = total / workers;
    let extra = total % workers;
    let mut start = 0;
    (0..workers)
        .map(|w| {
            let len = chunk + u64::from(w < extra);
            let range = start..start + len;
            start += len;
            range
        })
        .collect()
}

#[derive(Clone, Debug)]
struct ContractionEdge {
    label: usize,
    a: usize,
    b: usize,
    fail: EpsPolynomial,
}

/// Multigraph state of the pivotal recursion. Parallel edges are merged by
/// multiplying their failure polynomials and self-loops are dropped, so the
/// state stays simple.
#[derive(Clone, Debug)]
pub struct ContractionGraph {
    vertices: usize,
    edges: Vec<ContractionEdge>,
}

impl ContractionGraph {
    pub fn from_graph(g: &LabeledGraph) -> Self {
        ContractionGraph {
            vertices: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(label, e)| ContractionEdge {
                    label,
                    a: e.lo,
                    b: e.hi,
                    fail: EpsPolynomial::eps(),
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn is_connected(&self) -> bool {
        let mut dsu = DisjointSets::new(self.vertices);
        for e in &self.edges {
            dsu.union(e.a, e.b);
        }
        dsu.components() == 1
    }

    fn delete(&self, idx: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(idx);
        ContractionGraph {
            vertices: self.vertices,
            edges,
        }
    }

    /// Merges the endpoints of edge `idx`, then normalizes.
    fn contract(&self, idx: usize) -> Self {
        let (keep, gone) = {
            let e = &self.edges[idx];
            (e.a.min(e.b), e.a.max(e.b))
        };
        let relabel = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let mut edges: Vec<ContractionEdge> = Vec::with_capacity(self.edges.len() - 1);
        for (i, e) in self.edges.iter().enumerate() {
            if i == idx {
                continue;
            }
            let (a, b) = (relabel(e.a), relabel(e.b));
            if a == b {
                continue;
            }
            let (a, b) = (a.min(b), a.max(b));
            match edges.iter_mut().find(|x| x.a == a && x.b == b) {
                Some(parallel) => {
                    parallel.fail = &parallel.fail * &e.fail;
                    parallel.label = parallel.label.min(e.label);
                }
                None => edges.push(ContractionEdge {
                    label: e.label,
                    a,
                    b,
                    fail: e.fail.clone(),
                }),
            }
        }
        edges.sort_by_key(|e| e.label);
        ContractionGraph {
            vertices: self.vertices - 1,
            edges,
        }
    }

    /// All-terminal reliability as a polynomial in ε.
    pub fn reliability(&self) -> EpsPolynomial {
        if self.vertices == 1 {
            return EpsPolynomial::one();
        }
        if !self.is_connected() {
            return EpsPolynomial::zero();
        }
        let pivot = self
            .edges
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| e.label)
            .map(|(i, _)| i)
            .expect("connected graph on ≥2 vertices has an edge");
        let fail = &self.edges[pivot].fail;
        let survive = &EpsPolynomial::one() - fail;
        let contracted = self.contract(pivot).reliability();
        let deleted = self.delete(pivot).reliability();
        &(&survive * &contracted) + &(fail * &deleted)
    }
}

/// `1 − R(G)` by pivotal decomposition on the lowest-labeled edge.
pub fn failure_profile_pivotal(g: &LabeledGraph) -> EpsPolynomial {
    &EpsPolynomial::one() - &ContractionGraph::from_graph(g).reliability()
}

/// Value of `P_f(G, ε)` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureEvaluation {
    pub value: Rational,
    /// Set when ε is exactly 0 or 1, outside the open interval of interest.
    pub boundary: bool,
}

pub fn eval_failure(g: &LabeledGraph, eps: &Rational) -> Result<FailureEvaluation> {
    let poly = if g.edge_count() <= DEFAULT_SUBSET_EDGE_CAP {
        failure_profile_enum(g)?.polynomial
    } else {
        failure_profile_pivotal(g)
    };
    eval_failure_polynomial(&poly, eps)
}

/// Evaluates a precomputed failure polynomial with the domain checks of
/// [`eval_failure`].
pub fn eval_failure_polynomial(poly: &EpsPolynomial, eps: &Rational) -> Result<FailureEvaluation> {
    if eps.is_negative() || *eps > 1 {
        return Err(Error::Domain(format!("edge failure probability {eps} outside [0, 1]")));
    }
    Ok(FailureEvaluation {
        value: poly.eval(eps),
        boundary: eps.is_zero() || *eps == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: usize, pairs: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::from_one_based(k, pairs).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let edge = failure_profile_enum(&g(2, &[(1, 2)])).unwrap();
        assert_eq!(edge.counts, [0, 1]);
        assert_eq!(edge.polynomial, EpsPolynomial::eps());

        let k3 = failure_profile_enum(&g(3, &[(1, 2), (1, 3), (2, 3)])).unwrap();
        assert_eq!(k3.counts, [0, 0, 3, 1]);
        assert_eq!(k3.polynomial, EpsPolynomial::from_integers(&[0, 0, 3, -2]));

        let path = failure_profile_enum(&g(3, &[(1, 2), (2, 3)])).unwrap();
        assert_eq!(path.polynomial, EpsPolynomial::from_integers(&[0, 2, -1]));
    }

    #[test]
    fn unconnected_graph_always_fails() {
        let two = g(4, &[(1, 2), (3, 4)]);
        let profile = failure_profile_enum(&two).unwrap();
        assert_eq!(profile.counts, [1, 2, 1]);
        assert_eq!(profile.polynomial, EpsPolynomial::one());
        assert_eq!(failure_profile_pivotal(&two), EpsPolynomial::one());
    }

    #[test]
    fn pivotal_examples() {
        assert_eq!(failure_profile_pivotal(&g(2, &[(1, 2)])), EpsPolynomial::eps());
        assert_eq!(
            failure_profile_pivotal(&g(3, &[(1, 2), (1, 3), (2, 3)])),
            EpsPolynomial::from_integers(&[0, 0, 3, -2])
        );
    }

    #[test]
    fn pivotal_matches_enumeration_on_k4() {
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(failure_profile_pivotal(&k4), failure_profile_enum(&k4).unwrap().polynomial);
    }

    #[test]
    fn parallel_enumeration_is_identical() {
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let serial = failure_profile_enum(&k4).unwrap();
        for workers in [2, 3, 7, 100] {
            assert_eq!(failure_profile_enum_with(&k4, 24, workers).unwrap(), serial);
        }
    }

    #[test]
    fn subset_cap() {
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(matches!(failure_profile_enum_with(&k4, 5, 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let k3 = g(3, &[(1, 2), (1, 3), (2, 3)]);
        let half = Rational::ratio(1, 2);
        assert_eq!(eval_failure(&k3, &half).unwrap(), FailureEvaluation { value: half.clone(), boundary: false });
        let at_zero = eval_failure(&k3, &Rational::zero()).unwrap();
        assert!(at_zero.value.is_zero() && at_zero.boundary);
        let at_one = eval_failure(&k3, &Rational::one()).unwrap();
        assert_eq!(at_one.value, Rational::one());
        assert!(at_one.boundary);
        assert!(matches!(eval_failure(&k3, &Rational::ratio(3, 2)), Err(Error::Domain(_))));
        assert!(matches!(eval_failure(&k3, &Rational::ratio(-1, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn split_range_covers() {
        for (total, workers) in [(10, 3), (1, 8), (4096, 8), (5, 5)] {
            let ranges = split_range(total, workers);
            assert_eq!(ranges.first().unwrap().start, 0);
            assert_eq!(ranges.last().unwrap().end, total);
            assert!(ranges.windows(2).all(|w| w[0].end == w[1].start));
            assert!(ranges.iter().all(|r| !r.is_empty()));
        }
    }
}
