//! Cut-set weight machinery: the input–output weight table `A_{u,v}(G)`,
//! the cut-set weight distribution `B_v(G)`, and the left null space size
//! `T(G)` of the incidence matrix.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use super::f2::{f2_rank, incidence_matrix};
use super::graph::LabeledGraph;
use crate::error::{Error, Result};

/// Default cap on `k` for the `2^k` left-vector enumeration.
pub const DEFAULT_TABLE_VERTEX_CAP: usize = 24;
/// Default cap on `k` for the bipartition oracle.
pub const DEFAULT_ORACLE_VERTEX_CAP: usize = 20;

/// `entries[u][v]` = number of `m ∈ {0,1}^k` of weight `u` whose product
/// `m·M(G)` has weight `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IOWeightTable {
    k: usize,
    n: usize,
    entries: Vec<u64>,
}

impl IOWeightTable {
    fn zeros(k: usize, n: usize) -> Self {
        IOWeightTable {
            k,
            n,
            entries: vec![0; (k + 1) * (n + 1)],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.entries[u * (self.n + 1) + v]
    }

    fn bump(&mut self, u: usize, v: usize) {
        self.entries[u * (self.n + 1) + v] += 1;
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// Column sums `Σ_u A_{u,v}` for `v = 0..=n`.
    pub fn column_sums(&self) -> Vec<u64> {
        (0..=self.n).map(|v| (0..=self.k).map(|u| self.get(u, v)).sum()).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.n + 1)
    }
}

/// `counts[v] = B_v(G)`, the number of cut-sets of weight `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWeightDistribution {
    pub counts: Vec<u64>,
}

impl CutWeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn io_weight_table(g: &LabeledGraph) -> Result<IOWeightTable> {
    io_weight_table_capped(g, DEFAULT_TABLE_VERTEX_CAP)
}

/// Enumerates all `2^k` left vectors in Gray-code order, XOR-ing one row of
/// the incidence matrix per step.
pub fn io_weight_table_capped(g: &LabeledGraph, vertex_cap: usize) -> Result<IOWeightTable> {
    let k = g.vertex_count();
    if k > vertex_cap {
        return Err(Error::Capacity {
            what: "vertex count for the 2^k weight table",
            requested: k as u128,
            cap: vertex_cap as u128,
        });
    }
    let m = incidence_matrix(g);
    let mut table = IOWeightTable::zeros(k, g.edge_count());
    let mut c = vec![0u64; m.words_per_row()];
    let mut input_weight = 0usize;
    table.bump(0, 0);
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        // Gray code g(step) = step ^ (step >> 1) differs from g(step-1) in bit `flip`.
        let now_set = ((step ^ (step >> 1)) >> flip) & 1 == 1;
        if now_set {
            input_weight += 1;
        } else {
            input_weight -= 1;
        }
        for (dst, src) in c.iter_mut().zip(m.row(flip)) {
            *dst ^= src;
        }
        let output_weight: u32 = c.iter().map(|w| w.count_ones()).sum();
        table.bump(input_weight, output_weight as usize);
    }
    Ok(table)
}

/// `B_v(G) = ½ Σ_u A_{u,v}(G)` for a connected graph.
pub fn cut_weight_distribution(g: &LabeledGraph) -> Result<CutWeightDistribution> {
    if !g.is_connected() {
        return Err(Error::Precondition(
            "cut-set weights from the weight table require a connected graph".into(),
        ));
    }
    let table = io_weight_table(g)?;
    let counts = table
        .column_sums()
        .into_iter()
        .map(|s| {
            debug_assert!(s % 2 == 0);
            s / 2
        })
        .collect();
    Ok(CutWeightDistribution { counts })
}

/// Definitional oracle: tally the distinct bridging edge sets over all
/// vertex bipartitions `(V1, V2)`, the empty `V1` included.
pub fn cutset_oracle(g: &LabeledGraph) -> Result<CutWeightDistribution> {
    let k = g.vertex_count();
    if k > DEFAULT_ORACLE_VERTEX_CAP {
        return Err(Error::Capacity {
            what: "vertex count for the bipartition oracle",
            requested: k as u128,
            cap: DEFAULT_ORACLE_VERTEX_CAP as u128,
        });
    }
    let n = g.edge_count();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut counts = vec![0u64; n + 1];
    // The last vertex always sits in V2, so each bipartition is visited once.
    for side in 0u64..(1u64 << (k - 1)) {
        let in_v1 = |v: usize| v < k - 1 && (side >> v) & 1 == 1;
        let cut: Vec<usize> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| in_v1(e.lo) != in_v1(e.hi))
            .map(|(j, _)| j)
            .collect();
        let weight = cut.len();
        if seen.insert(cut) {
            counts[weight] += 1;
        }
    }
    Ok(CutWeightDistribution { counts })
}

/// `T(G) = |{m : m·M(G) = 0}| = 2^{k − rank}`.
pub fn null_space_size(g: &LabeledGraph) -> BigUint {
    let rank = f2_rank(&incidence_matrix(g));
    BigUint::one() << (g.vertex_count() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> LabeledGraph {
        LabeledGraph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn path3() -> LabeledGraph {
        LabeledGraph::from_one_based(3, &[(1, 2), (2, 3)]).unwrap()
    }

    fn nonzero(t: &IOWeightTable) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for u in 0..=t.vertex_count() {
            for v in 0..=t.edge_count() {
                if t.get(u, v) != 0 {
                    out.push((u, v, t.get(u, v)));
                }
            }
        }
        out
    }

    #[test]
    fn weight_table_examples() {
        let t = io_weight_table(&k3()).unwrap();
        assert_eq!(nonzero(&t), [(0, 0, 1), (1, 2, 3), (2, 2, 3), (3, 0, 1)]);
        let edge = LabeledGraph::from_one_based(2, &[(1, 2)]).unwrap();
        let t = io_weight_table(&edge).unwrap();
        assert_eq!(nonzero(&t), [(0, 0, 1), (1, 1, 2), (2, 0, 1)]);
        assert_eq!(t.total(), 4);
    }

    #[test]
    fn weight_table_cap() {
        assert!(matches!(io_weight_table_capped(&k3(), 2), Err(Error::Capacity { .. })));
    }

    #[test]
    fn cut_distribution_examples() {
        assert_eq!(cut_weight_distribution(&k3()).unwrap().counts, [1, 0, 3, 0]);
        let edge = LabeledGraph::from_one_based(2, &[(1, 2)]).unwrap();
        assert_eq!(cut_weight_distribution(&edge).unwrap().counts, [1, 1]);
        assert_eq!(cut_weight_distribution(&path3()).unwrap().counts, [1, 2, 1]);
        let two = LabeledGraph::from_one_based(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(matches!(cut_weight_distribution(&two), Err(Error::Precondition(_))));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(cutset_oracle(&k3()).unwrap().counts, [1, 0, 3, 0]);
        assert_eq!(cutset_oracle(&path3()).unwrap().counts, [1, 2, 1]);
        let star = LabeledGraph::from_one_based(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(cutset_oracle(&star).unwrap().counts, [1, 3, 3, 1]);
        assert_eq!(cut_weight_distribution(&star).unwrap().counts, [1, 3, 3, 1]);
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(null_space_size(&k3()), BigUint::from(2u32));
        let two = LabeledGraph::from_one_based(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(null_space_size(&two), BigUint::from(4u32));
    }
}
