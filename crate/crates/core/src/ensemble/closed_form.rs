//! Closed-form ensemble quantities: expected input–output weights, the
//! unconnectedness bounds, and the bounds on the expected failure
//! probability, all as exact rationals or ε-polynomials.

use crate::error::{Error, Result};
use crate::exactmath::{choose, EpsPolynomial, Rational};
use crate::graphcore::pair_count;

use super::params::EnsembleParams;

fn c(a: usize, b: usize) -> Rational {
    Rational::from(choose(a as u64, b as i64))
}

/// Number of vertex pairs straddling a `u`-vertex subset: `u(k−u)`.
fn crossing(k: usize, u: usize) -> usize {
    u * (k - u)
}

/// Probability over the ensemble that a fixed weight-`u` left vector maps to
/// a fixed weight-`v` output vector.
pub fn match_probability(p: EnsembleParams, u: usize, v: usize) -> Result<Rational> {
    let (k, n) = (p.k(), p.n());
    if u > k || v > n {
        return Err(Error::Domain(format!("(u, v) = ({u}, {v}) outside [0, {k}] × [0, {n}]")));
    }
    let pairs = p.pairs();
    let x = crossing(k, u);
    let num = c(x, v) * c(pairs - x, n - v);
    let den = c(n, v) * c(pairs, n);
    Ok(num / den)
}

/// `entries[u][v] = E[A_{u,v}(G)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedIOWeightTable {
    k: usize,
    n: usize,
    entries: Vec<Rational>,
}

impl ExpectedIOWeightTable {
    pub fn get(&self, u: usize, v: usize) -> &Rational {
        &self.entries[u * (self.n + 1) + v]
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.n
    }

    /// `½ Σ_u E[A_{u,v}]`, the expected cut-set weight coefficient for `v`.
    pub fn half_column_sum(&self, v: usize) -> Rational {
        let sum: Rational = (0..=self.k).map(|u| self.get(u, v).clone()).sum();
        sum * Rational::ratio(1, 2)
    }
}

pub fn expected_iow(p: EnsembleParams) -> ExpectedIOWeightTable {
    let (k, n) = (p.k(), p.n());
    let mut entries = Vec::with_capacity((k + 1) * (n + 1));
    for u in 0..=k {
        for v in 0..=n {
            let prob = match_probability(p, u, v).expect("indices in range");
            entries.push(c(k, u) * c(n, v) * prob);
        }
    }
    ExpectedIOWeightTable { k, n, entries }
}

/// Expected size of the left null space of the incidence matrix.
pub fn expected_t(p: EnsembleParams) -> Rational {
    let (k, n, pairs) = (p.k(), p.n(), p.pairs());
    let sum: Rational = (0..=k).map(|u| c(k, u) * c(pairs - crossing(k, u), n)).sum();
    sum / c(pairs, n)
}

/// Upper bound on the unconnected probability, `E[T]/2 − 1`. Not clamped.
pub fn pu_upper(p: EnsembleParams) -> Rational {
    expected_t(p) * Rational::ratio(1, 2) - Rational::one()
}

/// Isolated-vertex lower bound on the unconnected probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuLowerBound {
    /// The expression as written; its compensation term may drive it negative.
    pub raw: Rational,
    /// `max(0, raw)`, used in curves.
    pub floored: Rational,
}

impl PuLowerBound {
    pub fn was_floored(&self) -> bool {
        self.raw.is_negative()
    }
}

pub fn pu_lower(p: EnsembleParams) -> PuLowerBound {
    let (k, n) = (p.k(), p.n());
    let one_isolated = c(pair_count(k - 1), n);
    let two_isolated = c(pair_count(k.saturating_sub(2)), n);
    let raw = Rational::from(k as i64) * (one_isolated - Rational::from((k - 1) as i64) * two_isolated)
        / c(p.pairs(), n);
    let floored = raw.clone().max(Rational::zero());
    PuLowerBound { raw, floored }
}

/// Upper bound on `E[P_f(G, ε)]` as a polynomial in ε: the expected cut-set
/// weight polynomial plus the constant [`pu_upper`].
pub fn epf_upper(p: EnsembleParams) -> EpsPolynomial {
    let table = expected_iow(p);
    let mut coeffs = vec![pu_upper(p)];
    coeffs.extend((1..=p.n()).map(|v| table.half_column_sum(v)));
    EpsPolynomial::new(coeffs)
}

/// Lower bound on `E[P_f(G, ε)]` using the floored [`pu_lower`] term.
pub fn epf_lower(p: EnsembleParams) -> EpsPolynomial {
    epf_lower_with_term(p, &pu_lower(p).floored)
}

/// Lower bound with the raw isolated-vertex term, which is never larger.
pub fn epf_lower_raw(p: EnsembleParams) -> EpsPolynomial {
    epf_lower_with_term(p, &pu_lower(p).raw)
}

fn epf_lower_with_term(p: EnsembleParams, unconnected_term: &Rational) -> EpsPolynomial {
    let n = p.n();
    let table = expected_iow(p);
    let cut_part = (1..=n).fold(EpsPolynomial::zero(), |acc, v| {
        &acc + &EpsPolynomial::bernstein(v, n - v).scale(&table.half_column_sum(v))
    });
    &cut_part + &EpsPolynomial::constant(unconnected_term.clone() * Rational::ratio(1, 2))
}
