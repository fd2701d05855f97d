//! WebAssembly bindings for the static page in `www/`.
//!
//! Each export returns a JSON string; the page only draws. The `*_json`
//! functions hold the logic so they can be tested natively.

use std::f64::consts::FRAC_1_SQRT_2;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qwsearch::ctqw::ctqw_search_series;
use qwsearch::dtqw::{dtqw_search_series, hadamard_walk_line, kolmogorov_distance, konno_density};
use qwsearch::graph::{
    apex_join, complete_graph, cycle_graph, hypercube_graph, paper_example_graph,
    random_regular_graph, Graph,
};
use qwsearch::partition::coarsest_equitable_partition;
use qwsearch::reduction::{
    apex_closed_form, reduced_ctqw_search_series, reduced_dtqw_search_series, ReducedDtqwBasis,
};
use qwsearch::series::time_grid;

/// Full-space runs are skipped past these sizes to keep the page responsive.
pub const MAX_FULL_VERTICES: usize = 256;
pub const MAX_FULL_ARCS: usize = 200_000;
const MAX_SAMPLES: usize = 2000;
const MAX_STEPS: usize = 5000;
const MAX_LINE_STEPS: usize = 20_000;

struct Instance {
    graph: Graph,
    /// The `d` of the apex-over-d-regular closed form, if it applies.
    apex_degree: Option<usize>,
}

fn instance(family: &str, n: usize, d: usize, seed: u64) -> Result<Instance, String> {
    let err = |e: qwsearch::Error| e.to_string();
    let (graph, apex_degree) = match family {
        "complete" => (
            complete_graph(n).map_err(err)?,
            n.checked_sub(2).filter(|&d| d > 0),
        ),
        "cycle" => (cycle_graph(n).map_err(err)?, None),
        "hypercube" => {
            if n < 2 || !n.is_power_of_two() {
                return Err(format!("hypercube size must be a power of two, got {n}"));
            }
            (
                hypercube_graph(n.trailing_zeros() as usize).map_err(err)?,
                None,
            )
        }
        "apex-cycle" => {
            if n < 4 {
                return Err("apex-cycle needs at least 4 vertices".into());
            }
            (
                apex_join(&cycle_graph(n - 1).map_err(err)?).map_err(err)?,
                Some(2),
            )
        }
        "apex-regular" => {
            if n < 2 {
                return Err("apex-regular needs at least 2 vertices".into());
            }
            let base = random_regular_graph(n - 1, d, seed).map_err(err)?;
            (apex_join(&base).map_err(err)?, Some(d).filter(|&d| d > 0))
        }
        "paper-example" => (paper_example_graph(), None),
        other => return Err(format!("unknown family {other:?}")),
    };
    Ok(Instance { graph, apex_degree })
}

fn probabilities(series: &qwsearch::TimeSeries) -> Value {
    json!(series.probabilities())
}

/// Marked-vertex probability of the continuous-time search, reduced and
/// (when small enough) full, plus the closed form when `γ = 1/d`.
pub fn ctqw_curve_json(
    family: &str,
    n: usize,
    d: usize,
    gamma: f64,
    tmax: f64,
    samples: usize,
) -> Result<String, String> {
    if !(tmax > 0.0 && tmax.is_finite()) || !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("need tmax > 0 and 2..={MAX_SAMPLES} samples"));
    }
    let inst = instance(family, n, d, 1)?;
    let g = &inst.graph;
    let times = time_grid(tmax, samples);
    let reduced = reduced_ctqw_search_series(g, 0, gamma, &times).map_err(|e| e.to_string())?;
    let mut out = json!({
        "vertices": g.vertex_count(),
        "blocks": reduced.metadata.dimension,
        "times": times,
        "reduced": probabilities(&reduced),
    });
    if g.vertex_count() <= MAX_FULL_VERTICES {
        let full = ctqw_search_series(g, 0, gamma, &times).map_err(|e| e.to_string())?;
        out["max_discrepancy"] = json!(full.max_discrepancy(&reduced));
        out["full"] = probabilities(&full);
    }
    if let Some(d) = inst.apex_degree {
        if (gamma - 1.0 / d as f64).abs() < 1e-12 && d + 2 <= g.vertex_count() {
            let closed: Vec<f64> = times
                .iter()
                .map(|&t| apex_closed_form(g.vertex_count(), d, t))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            out["closed_form"] = json!(closed);
        }
    }
    Ok(out.to_string())
}

/// Marked-vertex probability per step of the Grover-coin search.
pub fn dtqw_curve_json(family: &str, n: usize, d: usize, steps: usize) -> Result<String, String> {
    if steps > MAX_STEPS {
        return Err(format!("at most {MAX_STEPS} steps"));
    }
    let inst = instance(family, n, d, 1)?;
    let g = &inst.graph;
    let reduced = reduced_dtqw_search_series(g, 0, steps).map_err(|e| e.to_string())?;
    let partition = coarsest_equitable_partition(g, 0).map_err(|e| e.to_string())?;
    let arcs = 2 * g.edge_count();
    let mut out = json!({
        "vertices": g.vertex_count(),
        "arcs": arcs,
        "blocks": partition.block_count(),
        "pairs": ReducedDtqwBasis::new(&partition).len(),
        "reduced": probabilities(&reduced),
    });
    if arcs <= MAX_FULL_ARCS {
        let full = dtqw_search_series(g, 0, steps).map_err(|e| e.to_string())?;
        out["max_discrepancy"] = json!(full.max_discrepancy(&reduced));
        out["full"] = probabilities(&full);
    }
    Ok(out.to_string())
}

/// Histogram of `X_n / n` for the Hadamard walk against the limit density.
pub fn konno_histogram_json(steps: usize, bins: usize) -> Result<String, String> {
    if !(10..=MAX_LINE_STEPS).contains(&steps) || !(4..=400).contains(&bins) {
        return Err(format!("need 10..={MAX_LINE_STEPS} steps and 4..=400 bins"));
    }
    let dist = hadamard_walk_line(steps);
    let width = 2.0 / bins as f64;
    let mut mass = vec![0.0; bins];
    for (i, &p) in dist.probabilities.iter().enumerate() {
        let x = dist.position(i) as f64 / steps as f64;
        let b = (((x + 1.0) / width) as usize).min(bins - 1);
        mass[b] += p;
    }
    let centers: Vec<f64> = (0..bins).map(|b| -1.0 + (b as f64 + 0.5) * width).collect();
    let density: Vec<f64> = mass.iter().map(|m| m / width).collect();
    // The limit density is unbounded at ±1/√2; sample it on a fine grid instead of at bin centers.
    let curve_x: Vec<f64> = (0..=800)
        .map(|i| 0.9995 * FRAC_1_SQRT_2 * (i as f64 / 400.0 - 1.0))
        .collect();
    let curve_y: Vec<f64> = curve_x.iter().map(|&x| konno_density(x)).collect();
    Ok(json!({
        "steps": steps,
        "centers": centers,
        "histogram": density,
        "limit_x": curve_x,
        "limit_y": curve_y,
        "kolmogorov_distance": kolmogorov_distance(&dist),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn ctqw_curve(
    family: &str,
    n: usize,
    d: usize,
    gamma: f64,
    tmax: f64,
    samples: usize,
) -> Result<String, JsValue> {
    ctqw_curve_json(family, n, d, gamma, tmax, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dtqw_curve(family: &str, n: usize, d: usize, steps: usize) -> Result<String, JsValue> {
    dtqw_curve_json(family, n, d, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn konno_histogram(steps: usize, bins: usize) -> Result<String, JsValue> {
    konno_histogram_json(steps, bins).map_err(|e| JsValue::from_str(&e))
}
