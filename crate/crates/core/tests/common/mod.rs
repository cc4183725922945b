//! Test-only oracles, independent of the library's enumeration paths.
#![allow(dead_code)]

use netrel::exactmath::choose_u64;
use netrel::graphcore::pair_count;
use netrel::{EpsPolynomial, LabeledGraph, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Vertex pairs in lexicographic order.
pub fn pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

/// Connectivity by bitmask flood fill over the pairs selected by `mask`.
pub fn spans_by_flood(k: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut adj = vec![0u64; k];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let mut reached = 1u64;
    loop {
        let mut next = reached;
        for (v, row) in adj.iter().enumerate() {
            if reached >> v & 1 == 1 {
                next |= row;
            }
        }
        if next == reached {
            break;
        }
        reached = next;
    }
    reached.count_ones() as usize == k
}

/// `D[s]` = number of unconnected spanning subgraphs of K_k with `s` edges.
pub fn unconnected_subgraph_counts(k: usize) -> Vec<u64> {
    let ps = pairs(k);
    let total = ps.len();
    assert!(total <= 28, "2^{total} subsets is too many for the oracle");
    let mut d = vec![0u64; total + 1];
    for mask in 0u64..(1u64 << total) {
        if !spans_by_flood(k, &ps, mask) {
            d[mask.count_ones() as usize] += 1;
        }
    }
    d
}

/// `Σ_G N_j(G)` over the ensemble via survivor sets: a size-`j` failure
/// set of `G` leaves survivor set `H ⊂ G` with `|H| = n − j`, and each
/// unconnected `H` extends to `C(C(k,2) − |H|, j)` ensemble members.
pub fn ensemble_failure_counts_by_survivors(k: usize, n: usize) -> Vec<u64> {
    let d = unconnected_subgraph_counts(k);
    let total = pair_count(k) as u64;
    (0..=n)
        .map(|j| d[n - j] * choose_u64(total - (n - j) as u64, j as u64))
        .collect()
}

/// Expected failure polynomial from the survivor-set counts, expanded with
/// repeated multiplication rather than the library's Bernstein helper.
pub fn epf_by_survivors(k: usize, n: usize) -> EpsPolynomial {
    let counts = ensemble_failure_counts_by_survivors(k, n);
    let size = Rational::from_integer(choose_u64(pair_count(k) as u64, n as u64));
    let eps = EpsPolynomial::eps();
    let keep = EpsPolynomial::one_minus_eps();
    let mut acc = EpsPolynomial::zero();
    for (j, c) in counts.iter().enumerate() {
        let term = eps.pow(j as u32) * keep.pow((n - j) as u32);
        acc = &acc + &term.scale(&(Rational::from_integer(*c) / size.clone()));
    }
    acc
}

pub fn random_graph(rng: &mut ChaCha8Rng, k: usize, n: usize) -> LabeledGraph {
    let mut all = pairs(k);
    for i in 0..n {
        let j = rng.gen_range(i..all.len());
        all.swap(i, j);
    }
    LabeledGraph::new(k, all[..n].iter().copied()).unwrap()
}

/// Random connected graph with `k ≤ max_k` and `n ≤ max_n`.
pub fn random_connected(rng: &mut ChaCha8Rng, min_k: usize, max_k: usize, max_n: usize) -> LabeledGraph {
    loop {
        let k = rng.gen_range(min_k..=max_k);
        let hi = pair_count(k).min(max_n);
        if hi < k - 1 {
            continue;
        }
        let n = rng.gen_range(k - 1..=hi);
        let g = random_graph(rng, k, n);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
