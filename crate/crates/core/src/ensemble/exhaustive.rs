//! Exact ensemble averages by visiting every edge set.
//!
//! The uniform measure over labeled graphs assigns the same weight to each
//! of the `n!` edge orderings of an edge set, and every quantity averaged
//! here is invariant under edge relabeling, so each edge set is visited once
//! with weight `1 / C(C(k,2), n)`.

use crate::error::Result;
use crate::exactmath::{EpsPolynomial, Rational};
use crate::graphcore::{f2_rank, incidence_matrix, io_weight_table};
use crate::reliability::{check_subset_cap, disconnecting_counts, weighted_counts_to_polynomial, SubsetCounter};

use super::params::{fold_edge_sets, EnsembleParams, EnumerationOptions};

fn ensemble_size(p: EnsembleParams) -> Rational {
    Rational::from_integer(p.edge_set_count())
}

/// Number of unconnected edge sets.
pub fn unconnected_count(p: EnsembleParams, opts: &EnumerationOptions) -> Result<u64> {
    let parts = fold_edge_sets(p, opts, || 0u64, |acc, g| *acc += u64::from(!g.is_connected()))?;
    Ok(parts.into_iter().sum())
}

pub fn pu_exact(p: EnsembleParams) -> Result<Rational> {
    pu_exact_with(p, &EnumerationOptions::default())
}

pub fn pu_exact_with(p: EnsembleParams, opts: &EnumerationOptions) -> Result<Rational> {
    Ok(Rational::from_integer(unconnected_count(p, opts)?) / ensemble_size(p))
}

/// `p_i` = probability that the incidence matrix has rank `k − i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDistribution {
    /// Indexed by `i`; entry 0 (full rank `k`) is always zero.
    pub probs: Vec<Rational>,
}

impl RankDistribution {
    pub fn p(&self, i: usize) -> &Rational {
        &self.probs[i]
    }

    /// `Σ_i 2^i p_i`, which equals `E[T(G)]`.
    pub fn expected_null_space_size(&self) -> Rational {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, p)| Rational::from(1i64 << i) * p)
            .sum()
    }
}

pub fn rank_distribution(p: EnsembleParams) -> Result<RankDistribution> {
    rank_distribution_with(p, &EnumerationOptions::default())
}

pub fn rank_distribution_with(p: EnsembleParams, opts: &EnumerationOptions) -> Result<RankDistribution> {
    let k = p.k();
    let parts = fold_edge_sets(p, opts, || vec![0u64; k], |acc, g| {
        let deficiency = k - f2_rank(&incidence_matrix(g));
        acc[deficiency] += 1;
    })?;
    let size = ensemble_size(p);
    let probs = (0..k)
        .map(|i| Rational::from_integer(parts.iter().map(|c| c[i]).sum::<u64>()) / size.clone())
        .collect();
    Ok(RankDistribution { probs })
}

/// Ensemble average of the input–output weight tables, entrywise.
pub fn average_io_weight_table(p: EnsembleParams, opts: &EnumerationOptions) -> Result<Vec<Vec<Rational>>> {
    let (k, n) = (p.k(), p.n());
    let parts = fold_edge_sets(p, opts, || vec![vec![0u64; n + 1]; k + 1], |acc, g| {
        let table = io_weight_table(g).expect("enumerable ensembles are far below the vertex cap");
        for (dst, src) in acc.iter_mut().zip(table.rows()) {
            for (d, s) in dst.iter_mut().zip(src) {
                *d += s;
            }
        }
    })?;
    let size = ensemble_size(p);
    Ok((0..=k)
        .map(|u| {
            (0..=n)
                .map(|v| Rational::from_integer(parts.iter().map(|t| t[u][v]).sum::<u64>()) / size.clone())
                .collect()
        })
        .collect())
}

/// Summed disconnecting-subset counts `Σ_G N_j(G)` over the ensemble.
pub fn total_failure_counts(p: EnsembleParams, opts: &EnumerationOptions) -> Result<Vec<u64>> {
    check_subset_cap(p.n(), opts.subset_edge_cap)?;
    let n = p.n();
    let parts = fold_edge_sets(
        p,
        opts,
        || (vec![0u64; n + 1], SubsetCounter::new(p.k())),
        |(acc, counter), g| {
            for (dst, src) in acc.iter_mut().zip(disconnecting_counts(g, counter)) {
                *dst += src;
            }
        },
    )?;
    let mut totals = vec![0u64; n + 1];
    for (part, _) in parts {
        for (dst, src) in totals.iter_mut().zip(part) {
            *dst += src;
        }
    }
    Ok(totals)
}

pub fn epf_exact(p: EnsembleParams) -> Result<EpsPolynomial> {
    epf_exact_with(p, &EnumerationOptions::default())
}

/// `E[P_f(G, ε)]` exactly: average the disconnecting counts over all edge
/// sets, then expand in the monomial basis.
pub fn epf_exact_with(p: EnsembleParams, opts: &EnumerationOptions) -> Result<EpsPolynomial> {
    let totals = total_failure_counts(p, opts)?;
    let size = ensemble_size(p);
    let averaged: Vec<Rational> = totals
        .into_iter()
        .map(|t| Rational::from_integer(t) / size.clone())
        .collect();
    Ok(weighted_counts_to_polynomial(&averaged))
}
