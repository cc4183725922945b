//! Browser bindings. Every export returns a JSON string or an error message.

use netrel::ensemble::{
    bound_curve, epf_exact, expected_t, format_significant, pu_exact, pu_lower, pu_upper, EnsembleParams, GridSpec,
    OUTPUT_DIGITS,
};
use netrel::graphcore::{cut_weight_distribution, f2_rank, incidence_matrix, null_space_size};
use netrel::reliability::{eval_failure_polynomial, failure_profile_pivotal};
use netrel::{LabeledGraph, Rational};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `edge sets × 2^n` workload computed for the exact curve.
pub const EXACT_WORK_CAP: u128 = 1 << 26;
/// Largest ensemble enumerated for the exact unconnectedness probability.
pub const PU_EXACT_CAP: u128 = 2_000_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn num(x: &Rational) -> Value {
    json!(x.to_f64())
}

fn exact_text(x: &Rational) -> Value {
    json!(x.to_string())
}

/// Lower bound, upper bound, and (for small ensembles) the exact expected
/// failure probability on a log-spaced grid.
#[wasm_bindgen]
pub fn bound_curve_json(k: usize, n: usize, min: f64, max: f64, points: usize) -> Result<String, String> {
    let p = EnsembleParams::new(k, n).map_err(err)?;
    let grid = GridSpec { min, max, points, log: true }.points(false).map_err(err)?;
    let work = 1u128
        .checked_shl(n as u32)
        .and_then(|subsets| subsets.checked_mul(p.edge_set_count()));
    let exact = if work.is_some_and(|w| w <= EXACT_WORK_CAP) {
        Some(epf_exact(p).map_err(err)?)
    } else {
        None
    };
    let curve = bound_curve(p, &grid, exact.as_ref().map(|e| (e, "enumeration")), false);
    let rows: Vec<Value> = curve
        .rows
        .iter()
        .map(|r| {
            json!({
                "eps": num(&r.eps),
                "lower": num(&r.lower),
                "exact": r.exact.as_ref().map(num),
                "upper": num(&r.upper),
            })
        })
        .collect();
    Ok(json!({
        "k": k,
        "n": n,
        "exact": exact.is_some(),
        "violations": curve.sandwich_violations().len(),
        "rows": rows,
    })
    .to_string())
}

/// Connectivity, cut-set weights and the failure polynomial of a graph in
/// the `k n` / `i j` text format, evaluated at `eps`.
#[wasm_bindgen]
pub fn analyze_graph_json(text: &str, eps: &str) -> Result<String, String> {
    let g = LabeledGraph::parse(text).map_err(err)?;
    let eps: Rational = eps.trim().parse().map_err(err)?;
    let poly = failure_profile_pivotal(&g);
    let value = eval_failure_polynomial(&poly, &eps).map_err(err)?.value;
    let cut_weights = if g.is_connected() {
        cut_weight_distribution(&g).ok().map(|b| b.counts)
    } else {
        None
    };
    Ok(json!({
        "k": g.vertex_count(),
        "n": g.edge_count(),
        "connected": g.is_connected(),
        "rank": f2_rank(&incidence_matrix(&g)),
        "null_space_size": null_space_size(&g).to_string(),
        "cut_weights": cut_weights,
        "polynomial": poly.to_string(),
        "value": exact_text(&value),
        "value_decimal": format_significant(&value, OUTPUT_DIGITS),
    })
    .to_string())
}

/// Bounds on the probability that a graph drawn from the ensemble is
/// unconnected, with the exact value when the ensemble is small enough.
#[wasm_bindgen]
pub fn unconnected_bounds_json(k: usize, n: usize) -> Result<String, String> {
    let p = EnsembleParams::new(k, n).map_err(err)?;
    let lower = pu_lower(p);
    let exact = if p.edge_set_count() <= PU_EXACT_CAP {
        Some(pu_exact(p).map_err(err)?)
    } else {
        None
    };
    Ok(json!({
        "k": k,
        "n": n,
        "edge_sets": p.edge_set_count().to_string(),
        "lower_raw": exact_text(&lower.raw),
        "lower": exact_text(&lower.floored),
        "floored": lower.was_floored(),
        "upper": exact_text(&pu_upper(p)),
        "expected_t": exact_text(&expected_t(p)),
        "exact": exact.as_ref().map(exact_text),
        "exact_decimal": exact.as_ref().map(|x| format_significant(x, OUTPUT_DIGITS)),
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn curve_for_six_vertices() {
        let v = parse(&bound_curve_json(6, 12, 1e-6, 0.5, 20).unwrap());
        assert_eq!(v["exact"], true);
        assert_eq!(v["violations"], 0);
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 20);
        assert_eq!(rows[0]["eps"], 1e-6);
        assert!(rows[0]["upper"].as_f64().unwrap() < 1e-4);
    }

    #[test]
    fn curve_skips_exact_for_large_ensembles() {
        let v = parse(&bound_curve_json(10, 20, 1e-3, 0.1, 3).unwrap());
        assert_eq!(v["exact"], false);
        assert!(v["rows"][0]["exact"].is_null());
        let v = parse(&bound_curve_json(20, 150, 1e-3, 0.1, 2).unwrap());
        assert_eq!(v["exact"], false);
    }

    #[test]
    fn curve_rejects_bad_input() {
        assert!(bound_curve_json(3, 4, 1e-3, 0.1, 3).is_err());
        assert!(bound_curve_json(4, 3, 0.0, 0.1, 3).is_err());
        assert!(bound_curve_json(4, 3, 1e-3, 0.1, 0).is_err());
    }

    #[test]
    fn triangle_analysis() {
        let v = parse(&analyze_graph_json("3 3\n1 2\n1 3\n2 3\n", "0.5").unwrap());
        assert_eq!(v["polynomial"], "3ε² − 2ε³");
        assert_eq!(v["value"], "1/2");
        assert_eq!(v["cut_weights"], json!([1, 0, 3, 0]));
        assert_eq!(v["rank"], 2);
    }

    #[test]
    fn unconnected_graph_analysis() {
        let v = parse(&analyze_graph_json("4 2\n1 2\n3 4\n", "0.1").unwrap());
        assert_eq!(v["connected"], false);
        assert!(v["cut_weights"].is_null());
        assert_eq!(v["value"], "1");
        assert!(analyze_graph_json("2 1\n2 2\n", "0.1").unwrap_err().contains("line 2"));
        assert!(analyze_graph_json("2 1\n1 2\n", "2").is_err());
    }

    #[test]
    fn unconnected_bounds() {
        let v = parse(&unconnected_bounds_json(4, 3).unwrap());
        assert_eq!(v["lower"], "1/5");
        assert_eq!(v["upper"], "1/5");
        assert_eq!(v["exact"], "1/5");
        let v = parse(&unconnected_bounds_json(7, 12).unwrap());
        assert_eq!(v["exact"], "7/646");
        let v = parse(&unconnected_bounds_json(12, 30).unwrap());
        assert!(v["exact"].is_null());
    }
}
