//! Exact all-terminal network failure probabilities for labeled graphs, and
//! ensemble-average bounds over the uniform random graph ensemble with `k`
//! vertices and `n` edges.
//!
//! All probabilities are exact rationals ([`Rational`]) or polynomials in the
//! edge failure probability ε ([`EpsPolynomial`]). Floating point appears
//! only in the Monte Carlo estimator and in output formatting.

pub mod dsu;
pub mod ensemble;
mod error;
pub mod exactmath;
pub mod graphcore;
pub mod reliability;

pub use error::{Error, Result};
pub use exactmath::{binom, poly_eval, poly_mul, EpsPolynomial, Rational};
pub use graphcore::LabeledGraph;
